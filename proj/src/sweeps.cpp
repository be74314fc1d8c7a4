#include "magnon/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "magnon/errors.hpp"
#include "magnon/parallel.hpp"

namespace magnon {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_ascending(const std::vector<double> &v, const char *name) {
  if (v.empty()) throw ValidationError(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw ValidationError(std::string(name) + " grid has non-finite values");
    if (i > 0 && v[i] <= v[i - 1]) throw ValidationError(std::string(name) + " grid must be ascending");
  }
}

// Golden-section maximisation of a unimodal-ish f on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)> &f, double a, double b,
                                     int iterations = 48) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

std::pair<double, double> bracket(const std::vector<double> &grid, std::size_t i) {
  return {grid[i == 0 ? 0 : i - 1], grid[std::min(i + 1, grid.size() - 1)]};
}

std::vector<int> start_sites(const LogicalEncoding &enc) {
  std::vector<int> s(enc.block_size());
  for (int i = 0; i < enc.block_size(); ++i) s[i] = i + 1;
  return s;
}

// Columns a transfer map touches: only the receiving block unless some target
// pattern carries fewer excitations than an input sector.
std::vector<int> transfer_columns(const LogicalEncoding &enc, int n) {
  int max_in = 0, min_pattern = Configuration::kCapacity;
  for (int bit = 0; bit < 2; ++bit) {
    for (const auto &[c, a] : enc.basis(bit)) {
      max_in = std::max(max_in, c.size());
      min_pattern = std::min(min_pattern, c.size());
    }
  }
  std::vector<int> cols;
  const int first = min_pattern < max_in ? 1 : n - enc.block_size() + 1;
  for (int s = first; s <= n; ++s) cols.push_back(s);
  return cols;
}

int largest_block(const std::vector<EncodingName> &encs) {
  int b = 1;
  for (EncodingName e : encs) b = std::max(b, LogicalEncoding(e).block_size());
  return b;
}

void check_lengths(const SweepSpec &spec, int min_n) {
  for (int n : spec.n_values) {
    if (n < min_n) {
      throw ChainTooShortError("chain length " + std::to_string(n) + " is shorter than the " +
                               std::to_string(min_n) + "-site block this sweep needs");
    }
  }
}

SweepAxis encoding_axis(const std::vector<EncodingName> &encs) {
  SweepAxis axis{"encoding", {}, {}};
  for (std::size_t i = 0; i < encs.size(); ++i) {
    axis.values.push_back(static_cast<double>(i));
    axis.labels.emplace_back(to_string(encs[i]));
  }
  return axis;
}

SweepAxis n_axis(const std::vector<int> &ns) {
  SweepAxis axis{"N", {}, {}};
  for (int n : ns) axis.values.push_back(n);
  return axis;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw ValidationError("grid needs finite lo <= hi and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

SweepSpec SweepSpec::defaults() {
  SweepSpec spec;
  spec.encodings = {EncodingName::TwoQubit, EncodingName::ThreeQubit1, EncodingName::ThreeQubit2,
                    EncodingName::FourQubit};
  for (int n = 4; n <= 50; ++n) spec.n_values.push_back(n);
  spec.thetas = uniform_grid(0.0, std::numbers::pi, std::numbers::pi / 60.0);
  spec.times = uniform_grid(0.0, 100.0, 0.05);
  spec.h_values = uniform_grid(0.0, 2.0, 0.05);
  return spec;
}

void SweepSpec::validate() const {
  if (encodings.empty()) throw ValidationError("sweep needs at least one encoding");
  if (n_values.empty()) throw ValidationError("N grid is empty");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) throw ValidationError("N grid must be ascending");
  }
  check_ascending(thetas, "theta");
  check_ascending(times, "t");
  check_ascending(h_values, "h");
  if (times.front() < 0.0) throw ValidationError("t grid must start at t >= 0");
  if (thetas.front() < 0.0 || thetas.back() > std::numbers::pi + 1e-12) {
    throw ValidationError("theta grid must lie in [0, pi]");
  }
  ChainParams{2, j_xy, 0.0, h_field}.validate();
}

std::size_t SweepResult::size() const {
  std::size_t n = 1;
  for (const auto &a : axes) n *= a.values.size();
  return n;
}

std::size_t SweepResult::flat_index(std::initializer_list<std::size_t> index) const {
  if (index.size() != axes.size()) throw ValidationError("index rank does not match the axes");
  std::size_t flat = 0;
  auto it = index.begin();
  for (const auto &a : axes) {
    if (*it >= a.values.size()) throw ValidationError("sweep index out of range");
    flat = flat * a.values.size() + *it++;
  }
  return flat;
}

Maximum maximize_on_grid(const std::vector<double> &grid, const std::function<double(double)> &f,
                         bool refine) {
  check_ascending(grid, "search");
  Maximum best{-std::numeric_limits<double>::infinity(), grid.front(), kNaN};
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v > best.value) {
      best = {v, grid[i], kNaN};
      arg = i;
    }
  }
  if (refine && grid.size() > 1) {
    const auto [a, b] = bracket(grid, arg);
    const auto [x, v] = golden_max(f, a, b);
    if (v > best.value) best = {v, x, kNaN};
  }
  return best;
}

SweepResult max_fidelity_vs_length(const SweepSpec &spec) {
  spec.validate();
  check_lengths(spec, largest_block(spec.encodings));
  const BlochState bloch{spec.thetas.front(), spec.phi};
  bloch.validate();
  SweepResult result;
  result.axes = {encoding_axis(spec.encodings), n_axis(spec.n_values)};
  const std::size_t n_enc = spec.encodings.size(), n_len = spec.n_values.size();
  result.values.assign(n_enc * n_len, 0.0);
  result.t_star.assign(n_enc * n_len, 0.0);
  result.h_star.assign(n_enc * n_len, kNaN);
  parallel_for(n_enc * n_len, [&](std::size_t task) {
    const LogicalEncoding enc(spec.encodings[task / n_len]);
    const int n = spec.n_values[task % n_len];
    const ModeTable modes(ChainParams{n, spec.j_xy, 0.0, spec.h_field});
    const std::vector<int> rows = start_sites(enc);
    const std::vector<int> cols = transfer_columns(enc, n);
    const auto f = [&](double t) {
      return transfer_map(enc, modes.propagator(t, rows, cols)).fidelity(bloch);
    };
    const Maximum m = maximize_on_grid(spec.times, f, spec.refine);
    result.values[task] = m.value;
    result.t_star[task] = m.t;
  });
  return result;
}

SweepResult max_fidelity_surface(const SweepSpec &spec) {
  spec.validate();
  const LogicalEncoding enc(spec.encodings.front());
  check_lengths(spec, enc.block_size());
  SweepResult result;
  result.axes = {n_axis(spec.n_values), SweepAxis{"theta", spec.thetas, {}}};
  const std::size_t n_len = spec.n_values.size(), n_theta = spec.thetas.size();
  result.values.assign(n_len * n_theta, 0.0);
  result.t_star.assign(n_len * n_theta, 0.0);
  result.h_star.assign(n_len * n_theta, kNaN);
  std::vector<BlochState> blochs;
  for (double th : spec.thetas) {
    blochs.push_back({th, spec.phi});
    blochs.back().validate();
  }
  parallel_for(n_len, [&](std::size_t i) {
    const int n = spec.n_values[i];
    const ModeTable modes(ChainParams{n, spec.j_xy, 0.0, spec.h_field});
    const std::vector<int> rows = start_sites(enc);
    const std::vector<int> cols = transfer_columns(enc, n);
    auto map_at = [&](double t) { return transfer_map(enc, modes.propagator(t, rows, cols)); };
    std::vector<double> best(n_theta, -1.0);
    std::vector<std::size_t> arg(n_theta, 0);
    for (std::size_t k = 0; k < spec.times.size(); ++k) {
      const LogicalTransferMap map = map_at(spec.times[k]);
      for (std::size_t j = 0; j < n_theta; ++j) {
        const double v = map.fidelity(blochs[j]);
        if (v > best[j]) {
          best[j] = v;
          arg[j] = k;
        }
      }
    }
    for (std::size_t j = 0; j < n_theta; ++j) {
      double value = best[j], t_star = spec.times[arg[j]];
      if (spec.refine && spec.times.size() > 1) {
        const auto [a, b] = bracket(spec.times, arg[j]);
        const auto [x, v] = golden_max([&](double t) { return map_at(t).fidelity(blochs[j]); }, a, b);
        if (v > value) {
          value = v;
          t_star = x;
        }
      }
      result.values[i * n_theta + j] = value;
      result.t_star[i * n_theta + j] = t_star;
    }
  });
  return result;
}

SweepResult avg_fidelity_vs_length(const SweepSpec &spec) {
  spec.validate();
  int min_n = 1;
  for (EncodingName e : spec.encodings) {
    min_n = std::max(min_n, e == EncodingName::VacuumSinglet ? 5 : LogicalEncoding(e).block_size());
  }
  check_lengths(spec, min_n);
  SweepResult result;
  result.axes = {encoding_axis(spec.encodings), n_axis(spec.n_values)};
  const std::size_t n_enc = spec.encodings.size(), n_len = spec.n_values.size();
  result.values.assign(n_enc * n_len, 0.0);
  result.t_star.assign(n_enc * n_len, 0.0);
  result.h_star.assign(n_enc * n_len, 0.0);
  parallel_for(n_enc * n_len, [&](std::size_t task) {
    const EncodingName name = spec.encodings[task / n_len];
    const LogicalEncoding enc(name);
    const int n = spec.n_values[task % n_len];
    // The field enters every propagator entry only through e^{-2iht}; build at h = 0 and shift.
    const ModeTable modes(ChainParams{n, spec.j_xy, 0.0, 0.0});
    std::vector<int> rows, cols;
    if (name == EncodingName::VacuumSinglet) {
      rows = {1, 3};
      cols = {n - 2, n - 1, n};
    } else if (name == EncodingName::SingleSpin) {
      rows = {1};
      cols = {n};
    } else {
      rows = start_sites(enc);
      cols = transfer_columns(enc, n);
    }
    auto value_of = [&](const PropagatorMatrix &p) {
      if (name == EncodingName::VacuumSinglet) return average_fidelity_closed_form(p);
      if (name == EncodingName::SingleSpin) return single_spin_average_fidelity(p);
      return transfer_map(enc, p).average_fidelity();
    };
    auto f = [&](double t, double h) { return value_of(modes.propagator(t, rows, cols).field_shifted(h)); };

    Maximum best{-1.0, 0.0, 0.0};
    std::size_t ti = 0, hi = 0;
    for (std::size_t k = 0; k < spec.times.size(); ++k) {
      const PropagatorMatrix base = modes.propagator(spec.times[k], rows, cols);
      for (std::size_t j = 0; j < spec.h_values.size(); ++j) {
        const double v = value_of(base.field_shifted(spec.h_values[j]));
        if (v > best.value) {
          best = {v, spec.times[k], spec.h_values[j]};
          ti = k;
          hi = j;
        }
      }
    }
    if (spec.refine && (spec.times.size() > 1 || spec.h_values.size() > 1)) {
      const auto [ta, tb] = bracket(spec.times, ti);
      const auto [ha, hb] = bracket(spec.h_values, hi);
      double t = best.t, h = best.h;
      for (int round = 0; round < 3; ++round) {
        if (tb > ta) t = golden_max([&](double x) { return f(x, h); }, ta, tb).first;
        if (hb > ha) h = golden_max([&](double x) { return f(t, x); }, ha, hb).first;
      }
      const double v = f(t, h);
      if (v > best.value) best = {v, t, h};
    }
    result.values[task] = best.value;
    result.t_star[task] = best.t;
    result.h_star[task] = best.h;
  });
  return result;
}

std::vector<SiteTrace> fidelity_site_traces(const SweepSpec &spec, std::vector<int> sites,
                                            double prominence) {
  spec.validate();
  const LogicalEncoding enc(spec.encodings.front());
  const int n = spec.n_values.front();
  const int b = enc.block_size();
  if (n < b) throw ChainTooShortError("chain shorter than the logical block");
  if (sites.empty()) {
    for (int i = b; i <= n; ++i) sites.push_back(i);
  }
  for (int i : sites) {
    if (i < b || i > n) throw ValidationError("trace site " + std::to_string(i) + " outside [block, N]");
  }
  const BlochState bloch{spec.thetas.front(), spec.phi};
  const ModeTable modes(ChainParams{n, spec.j_xy, 0.0, spec.h_field});
  const ExcitationState initial = logical_state(enc, bloch, Placement::Start, n);

  struct Reader {
    std::vector<int> block;
    Eigen::VectorXcd phi;
  };
  std::vector<Reader> readers;
  for (int i : sites) {
    std::vector<int> block(b);
    for (int k = 0; k < b; ++k) block[k] = i - b + 1 + k;
    readers.push_back({block, block_vector(logical_state_at(enc, bloch, i - b + 1, n), block)});
  }
  std::vector<SiteTrace> traces(sites.size());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    traces[s].site = sites[s];
    traces[s].trace.times = spec.times;
    traces[s].trace.values.assign(spec.times.size(), 0.0);
  }
  parallel_for(spec.times.size(), [&](std::size_t k) {
    const ExcitationState psi = evolve(initial, modes, spec.times[k]);
    for (std::size_t s = 0; s < readers.size(); ++s) {
      const double f2 = fidelity_squared(reduce_to_block(psi, readers[s].block), readers[s].phi);
      traces[s].trace.values[k] = std::sqrt(f2);
    }
  });
  for (auto &st : traces) st.trace.peaks = find_peaks(st.trace, prominence);
  return traces;
}

}  // namespace magnon
