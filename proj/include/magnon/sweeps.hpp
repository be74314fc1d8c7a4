#pragma once

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "magnon/encodings.hpp"
#include "magnon/fidelity.hpp"

namespace magnon {

// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Domains of an exhaustive fidelity search.
struct SweepSpec {
  std::vector<EncodingName> encodings;
  std::vector<int> n_values;
  std::vector<double> thetas;
  double phi = 0.0;
  std::vector<double> times;
  std::vector<double> h_values;  // only where the field is optimised
  double j_xy = 1.0;
  double h_field = 1.0;  // field used when it is not optimised
  bool refine = true;

  // t in [0, 100] step 0.05, h in [0, 2] step 0.05, theta in [0, pi] step pi/60.
  static SweepSpec defaults();
  void validate() const;
};

struct SweepAxis {
  std::string name;
  std::vector<double> values;
  std::vector<std::string> labels;  // optional display names (e.g. encodings)
};

/// Row-major array over the axes with per-point argmax metadata.
struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<double> values;
  std::vector<double> t_star;
  std::vector<double> h_star;  // NaN where the field was not optimised

  std::size_t size() const;
  std::size_t flat_index(std::initializer_list<std::size_t> index) const;
  double value(std::initializer_list<std::size_t> index) const { return values[flat_index(index)]; }
};

struct Maximum {
  double value;
  double t;
  double h;
};

// Grid maximum of f over `grid`; with `refine`, a golden-section search on the
// two cells around the grid argmax, keeping whichever is larger.
Maximum maximize_on_grid(const std::vector<double> &grid, const std::function<double(double)> &f,
                         bool refine);

// F_max(N) per encoding at theta = thetas.front() (the equal superposition by default).
SweepResult max_fidelity_vs_length(const SweepSpec &spec);

// F_max(N, theta) for encodings.front().
SweepResult max_fidelity_surface(const SweepSpec &spec);

// max over (t, h) of the Bloch-averaged F^2, per encoding and N.
SweepResult avg_fidelity_vs_length(const SweepSpec &spec);

struct SiteTrace {
  int site;  // last site of the receiving block
  FidelityTrace trace;
};

// F(t) read on blocks ending at each of `sites` (default: every block from the
// sending block to the chain end), for encodings.front() at (thetas.front(), phi)
// on a chain of n_values.front() sites.
std::vector<SiteTrace> fidelity_site_traces(const SweepSpec &spec, std::vector<int> sites = {},
                                            double prominence = 0.02);

}  // namespace magnon
