#pragma once

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "magnon/chain_model.hpp"
#include "magnon/encodings.hpp"
#include "magnon/magnon_dynamics.hpp"

namespace magnon {

struct MemoryProtocolResult {
  std::vector<double> swap_times;
  std::vector<double> etas;                // success probability of each swap
  std::vector<double> cumulative_success;  // 1 - prod_{i<=k} (1 - eta_i)
  std::vector<double> cumulative_failure;  // prod_{i<=k} (1 - eta_i)
};

/// Repeated swap-to-memory. At each swap time the target component on the end
/// block is extracted with probability eta_k = |<target|Phi(t_k)>|^2, the
/// remainder is renormalised and evolves on.
MemoryProtocolResult memory_protocol(const ChainParams &params, const LogicalEncoding &enc,
                                     const BlochState &bloch, const std::vector<double> &swap_times);

// Same protocol on dense state vectors with the exact oracle (N <= 14).
MemoryProtocolResult memory_protocol_exact(const ChainParams &params, const LogicalEncoding &enc,
                                           const BlochState &bloch,
                                           const std::vector<double> &swap_times);

// The printed logical X on spins (1, 3), basis |00>,|01>,|10>,|11>.
Eigen::Matrix4cd logical_x();

// Controlled logical X: acts with `x` on the target pair when the 3-spin
// control block is |000> (logical zero of the vacuum-singlet code), identity
// otherwise. Index = control_bits * 4 + target_pair_bits.
Eigen::MatrixXcd logical_cnot(const Eigen::Matrix4cd &x = logical_x());

/// Amplitudes over pairs of configurations, one per chain.
class TwoChainState {
 public:
  using Key = std::pair<Configuration, Configuration>;
  using Map = std::map<Key, Complex>;

  explicit TwoChainState(int n_sites);
  static TwoChainState product(const ExcitationState &first, const ExcitationState &second);

  int n_sites() const { return n_sites_; }
  const Map &amplitudes() const { return amps_; }
  void add(const Configuration &first, const Configuration &second, Complex amp);
  double norm_squared() const;

 private:
  int n_sites_;
  Map amps_;
};

TwoChainState operator+(TwoChainState a, const TwoChainState &b);

// Independent free evolution of both chains for time t.
TwoChainState evolve(const TwoChainState &state, const ModeTable &modes, double t);

// Controlled gate: `gate` (4x4 on chain-2 sites pair.first/pair.second) fires
// when chain 1 has no excitation on `control_block`.
TwoChainState apply_controlled(const TwoChainState &state, const std::vector<int> &control_block,
                               std::pair<int, int> target_pair, const Eigen::Matrix4cd &gate);

// Probabilities of the 2^b occupation patterns of chain 2's `block`
// (first block site = most significant bit).
std::vector<double> chain2_block_distribution(const TwoChainState &state, const std::vector<int> &block);

struct DualChainOutcome {
  double p_confirm;        // P(chain 2's last block reads |000>)
  double f_conditioned;    // chain-1 block fidelity after a |000> outcome (NaN if p_confirm ~ 0)
  double f_unconditioned;  // chain-1 block fidelity after decode, no post-selection
  double f_single_chain;   // plain one-chain transfer fidelity, no protocol
  double leakage;          // weight outside the code space on the receiving blocks
  std::vector<double> outcome_probabilities;  // all 8 chain-2 block patterns
};

/// Dual-chain confirmation with the vacuum-singlet code: encode
/// a|0L>|1L> + b|1L>|0L> via the controlled X_L, evolve both chains for
/// t_wait, decode with the controlled X_L^dagger on the receiving blocks,
/// measure chain 2's last three sites.
DualChainOutcome dual_chain_protocol(const ChainParams &params, const BlochState &bloch, double t_wait);

// Same protocol on a dense 2N-site state with the exact oracle (2N <= 14).
DualChainOutcome dual_chain_protocol_exact(const ChainParams &params, const BlochState &bloch,
                                           double t_wait);

}  // namespace magnon
