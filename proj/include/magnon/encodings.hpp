#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magnon/magnon_dynamics.hpp"

namespace magnon {

enum class EncodingName {
  TwoQubit,       // |0L> = |01>, |1L> = |10>
  ThreeQubit1,    // three-spin DFS, one-excitation gauge
  ThreeQubit2,    // three-spin DFS, two-excitation gauge
  FourQubit,      // four-spin DFS
  VacuumSinglet,  // |0L> = |000>, |1L> = (|001> - |100>)/sqrt2
  SingleSpin,     // |0L> = |0>, |1L> = |1> (unencoded baseline)
};

std::string_view to_string(EncodingName name);
EncodingName parse_encoding(std::string_view text);  // CLI spelling, e.g. "three-qubit-1"
std::vector<EncodingName> all_encodings();

// Gauge of the three-spin DFS: |0L> = a0 (|010>-|100>)/sqrt2 + b0 (|011>-|101>)/sqrt2,
// |1L> = a1 (2|001>-|010>-|100>)/sqrt6 + b1 (-2|110>+|011>+|101>)/sqrt6.
struct Gauge {
  Complex alpha0 = 1.0;
  Complex beta0 = 0.0;
  Complex alpha1 = 1.0;
  Complex beta1 = 0.0;
};

// Block-local amplitude: sites are 1..block_size.
using BlockVector = std::vector<std::pair<Configuration, Complex>>;

class LogicalEncoding {
 public:
  explicit LogicalEncoding(EncodingName name);
  LogicalEncoding(EncodingName name, Gauge gauge);

  EncodingName name() const { return name_; }
  int block_size() const { return block_size_; }
  const std::optional<Gauge> &gauge() const { return gauge_; }

  // |0L> (bit = 0) or |1L> (bit = 1) on block sites 1..block_size.
  const BlockVector &basis(int bit) const { return basis_.at(bit); }

 private:
  EncodingName name_;
  int block_size_;
  std::optional<Gauge> gauge_;
  std::vector<BlockVector> basis_;
};

struct BlochState {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  void validate() const;
  // (cos(theta/2), sin(theta/2) e^{i phi})
  std::pair<Complex, Complex> coefficients() const;
};

enum class Placement { Start, End };

// Sites of the logical block for the given placement.
std::vector<int> block_sites(const LogicalEncoding &enc, Placement placement, int n_sites);

// |0L> or |1L> planted on the block; all other spins down.
ExcitationState logical_basis_state(const LogicalEncoding &enc, int bit, Placement placement,
                                    int n_sites);

// cos(theta/2)|0L> + sin(theta/2) e^{i phi} |1L> planted on the block.
ExcitationState logical_state(const LogicalEncoding &enc, const BlochState &bloch,
                              Placement placement, int n_sites);

// Logical vector planted on sites first_site .. first_site + block_size - 1.
ExcitationState logical_state_at(const LogicalEncoding &enc, const BlochState &bloch, int first_site,
                                 int n_sites);

// The ideal received state: the same logical vector on the last block.
ExcitationState target_state(const LogicalEncoding &enc, const BlochState &bloch, int n_sites);

}  // namespace magnon
