#pragma once

#include <vector>

#include <Eigen/Dense>

#include "magnon/chain_model.hpp"
#include "magnon/encodings.hpp"
#include "magnon/magnon_dynamics.hpp"

namespace magnon {

/// Reduced density matrix of a block of sites. Basis index: the first block
/// site is the most significant bit, bit 1 = spin up.
struct ReducedBlockState {
  std::vector<int> block_sites;
  Eigen::MatrixXcd matrix;

  double trace() const { return matrix.trace().real(); }
};

// Partial trace of |psi><psi| over everything outside `block_sites`.
ReducedBlockState reduce_to_block(const ExcitationState &state, const std::vector<int> &block_sites);

// Block-local vector (same basis as ReducedBlockState) of a state supported on
// the block; throws BlockMismatchError if it has excitations elsewhere.
Eigen::VectorXcd block_vector(const ExcitationState &target, const std::vector<int> &block_sites);

// <phi|rho|phi>, clipped to [0, 1].
double fidelity_squared(const ReducedBlockState &rho, const Eigen::VectorXcd &phi);

// F = sqrt(<phi|rho|phi>) for the block reduced state of `state`.
double fidelity(const ExcitationState &state, const ExcitationState &target,
                const std::vector<int> &block_sites);

// |a* A_N + b* A_{N-1}|, A_l = b f_{1,l} + a f_{2,l}. Needs rows 1 and 2 (or N-1, N).
double two_spin_fidelity_closed_form(const PropagatorMatrix &prop, Complex alpha, Complex beta);

// Bloch average of <phi|rho|phi> for the vacuum-singlet encoding:
// 1/3 + Re(X)/3 + |X|^2/3 + (1 - |G_N|^2 - |G_{N-1}|^2 - |G_{N-2}|^2)/6,
// X = (G_N - G_{N-2})/sqrt2, G_i = (f_{3,i} - f_{1,i})/sqrt2. Requires N >= 5.
double average_fidelity_closed_form(const PropagatorMatrix &prop);

// Same average for the unencoded single-spin transfer: 1/2 + Re f/3 + |f|^2/6, f = f_{1,N}.
double single_spin_average_fidelity(const PropagatorMatrix &prop);

/// Linear map from the logical input qubit to the received block, restricted
/// to what the fidelity needs.
///
/// With v_{xy} = conj(c_x) c_y the received fidelity is
/// F^2 = conj(v)^T gram v, where gram is Hermitian PSD (index 2x + y).
class LogicalTransferMap {
 public:
  explicit LogicalTransferMap(const Eigen::Matrix4cd &gram) : gram_(gram) {}

  const Eigen::Matrix4cd &gram() const { return gram_; }
  double fidelity_squared(const BlochState &bloch) const;
  double fidelity(const BlochState &bloch) const;
  // Uniform Bloch-sphere average of F^2.
  double average_fidelity() const;

 private:
  Eigen::Matrix4cd gram_;
};

// Evolves both logical basis states from the start block and overlaps them
// with the end-block targets. `prop` needs rows for the start-block sites.
LogicalTransferMap transfer_map(const LogicalEncoding &enc, const PropagatorMatrix &prop);

// Same, with an explicit receiving block (translation of the logical vectors).
LogicalTransferMap transfer_map(const LogicalEncoding &enc, const PropagatorMatrix &prop,
                                int receive_first_site);

struct Peak {
  double time;
  double value;
};

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<Peak> peaks;
};

// Local maxima with topographic prominence >= `prominence`, each refined by a
// parabola through the three samples around it. Assumes a uniform grid.
std::vector<Peak> find_peaks(const FidelityTrace &trace, double prominence = 0.02);

// F(t) of `initial` evolved and read against `target` on `block_sites`.
FidelityTrace fidelity_trace(const ModeTable &modes, const ExcitationState &initial,
                             const ExcitationState &target, const std::vector<int> &block_sites,
                             const std::vector<double> &times, double prominence = 0.02);

}  // namespace magnon
