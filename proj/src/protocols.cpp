#include "magnon/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "magnon/errors.hpp"
#include "magnon/exact_oracle.hpp"
#include "magnon/fidelity.hpp"

namespace magnon {

namespace {

constexpr double kNeverHappens = 1e-14;

void check_swap_times(const std::vector<double> &times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw ValidationError("swap times must be finite and >= 0");
    if (i > 0 && times[i] <= times[i - 1]) throw ValidationError("swap times must be ascending");
  }
}

void record(MemoryProtocolResult &r, double t, double eta) {
  eta = std::clamp(eta, 0.0, 1.0);
  const double prev = r.cumulative_failure.empty() ? 1.0 : r.cumulative_failure.back();
  r.swap_times.push_back(t);
  r.etas.push_back(eta);
  r.cumulative_failure.push_back(prev * (1.0 - eta));
  r.cumulative_success.push_back(1.0 - r.cumulative_failure.back());
}

Configuration with_pair_bits(const Configuration &c, std::pair<int, int> pair, int bits) {
  std::vector<int> sites;
  for (int s : c) {
    if (s != pair.first && s != pair.second) sites.push_back(s);
  }
  if (bits & 2) sites.push_back(pair.first);
  if (bits & 1) sites.push_back(pair.second);
  std::sort(sites.begin(), sites.end());
  return Configuration(std::span<const int>(sites));
}

bool touches(const Configuration &c, const std::vector<int> &block) {
  return std::any_of(c.begin(), c.end(), [&](int s) {
    return std::find(block.begin(), block.end(), s) != block.end();
  });
}

std::vector<int> last_block(int n) { return {n - 2, n - 1, n}; }

// Chain-1 reduced state on `block`, tracing chain 2 entirely.
ReducedBlockState chain1_block_state(const TwoChainState &state, const std::vector<int> &block) {
  std::map<std::pair<Configuration, Configuration>, std::vector<std::pair<int, Complex>>> groups;
  const int b = static_cast<int>(block.size());
  for (const auto &[key, a] : state.amplitudes()) {
    int mask = 0;
    std::vector<int> rest;
    for (int s : key.first) {
      const auto it = std::find(block.begin(), block.end(), s);
      if (it != block.end()) {
        mask |= 1 << (b - 1 - static_cast<int>(it - block.begin()));
      } else {
        rest.push_back(s);
      }
    }
    groups[{Configuration(std::span<const int>(rest)), key.second}].emplace_back(mask, a);
  }
  ReducedBlockState out{block, Eigen::MatrixXcd::Zero(1 << b, 1 << b)};
  for (const auto &[k, entries] : groups) {
    for (const auto &[m1, a1] : entries) {
      for (const auto &[m2, a2] : entries) out.matrix(m1, m2) += a1 * std::conj(a2);
    }
  }
  return out;
}

// NaN when the conditioning event has (numerically) zero probability.
double normalised_fidelity(const ReducedBlockState &rho, const Eigen::VectorXcd &phi) {
  const double tr = rho.trace();
  if (tr < kNeverHappens) return std::numeric_limits<double>::quiet_NaN();
  const double f2 = (phi.adjoint() * rho.matrix * phi)(0, 0).real() / tr;
  return std::sqrt(std::clamp(f2, 0.0, 1.0));
}

}  // namespace

MemoryProtocolResult memory_protocol(const ChainParams &params, const LogicalEncoding &enc,
                                     const BlochState &bloch, const std::vector<double> &swap_times) {
  params.validate();
  check_swap_times(swap_times);
  const int n = params.n_sites;
  const ModeTable modes(params);
  ExcitationState psi = logical_state(enc, bloch, Placement::Start, n);
  const ExcitationState target = target_state(enc, bloch, n);
  MemoryProtocolResult result;
  double now = 0.0;
  bool exhausted = false;
  for (double t : swap_times) {
    if (exhausted) {
      record(result, t, 0.0);
      continue;
    }
    psi = evolve(psi, modes, t - now);
    now = t;
    const Complex overlap = inner_product(target, psi);
    const double eta = std::norm(overlap);
    record(result, t, eta);
    ExcitationState rest = psi - overlap * target;
    const double remaining = rest.norm_squared();
    if (remaining < 1e-14) {
      exhausted = true;
      continue;
    }
    psi = (1.0 / std::sqrt(remaining)) * rest;
  }
  return result;
}

MemoryProtocolResult memory_protocol_exact(const ChainParams &params, const LogicalEncoding &enc,
                                           const BlochState &bloch,
                                           const std::vector<double> &swap_times) {
  check_swap_times(swap_times);
  const int n = params.n_sites;
  const oracle::ExactEvolver evolver(oracle::build_hamiltonian(params));
  Eigen::VectorXcd psi = oracle::embed(logical_state(enc, bloch, Placement::Start, n));
  const Eigen::VectorXcd target = oracle::embed(target_state(enc, bloch, n));
  MemoryProtocolResult result;
  double now = 0.0;
  bool exhausted = false;
  for (double t : swap_times) {
    if (exhausted) {
      record(result, t, 0.0);
      continue;
    }
    psi = evolver.evolve(psi, t - now);
    now = t;
    const Complex overlap = target.dot(psi);  // conjugates the first argument
    record(result, t, std::norm(overlap));
    Eigen::VectorXcd rest = psi - overlap * target;
    const double remaining = rest.squaredNorm();
    if (remaining < 1e-14) {
      exhausted = true;
      continue;
    }
    psi = rest / std::sqrt(remaining);
  }
  return result;
}

Eigen::Matrix4cd logical_x() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix4cd x;
  x << 0, 1, 0, 0,
       r, 0, 0, r,
      -r, 0, 0, r,
       0, 0, 1, 0;
  return x;
}

Eigen::MatrixXcd logical_cnot(const Eigen::Matrix4cd &x) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(32, 32);
  u.block(0, 0, 4, 4) = x;
  return u;
}

TwoChainState::TwoChainState(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1) throw ValidationError("two-chain state needs n_sites >= 1");
}

TwoChainState TwoChainState::product(const ExcitationState &first, const ExcitationState &second) {
  if (first.n_sites() != second.n_sites()) throw ValidationError("chains must have equal length");
  TwoChainState out(first.n_sites());
  for (const auto &[c1, a1] : first.amplitudes()) {
    for (const auto &[c2, a2] : second.amplitudes()) out.add(c1, c2, a1 * a2);
  }
  return out;
}

void TwoChainState::add(const Configuration &first, const Configuration &second, Complex amp) {
  amps_[{first, second}] += amp;
}

double TwoChainState::norm_squared() const {
  double acc = 0.0;
  for (const auto &[k, a] : amps_) acc += std::norm(a);
  return acc;
}

TwoChainState operator+(TwoChainState a, const TwoChainState &b) {
  for (const auto &[k, amp] : b.amplitudes()) a.add(k.first, k.second, amp);
  return a;
}

TwoChainState evolve(const TwoChainState &state, const ModeTable &modes, double t) {
  const int n = state.n_sites();
  std::map<Configuration, ExcitationState> by_second;
  for (const auto &[k, a] : state.amplitudes()) {
    by_second.try_emplace(k.second, n).first->second.add(k.first, a);
  }
  std::map<Configuration, ExcitationState> by_first;
  for (const auto &[c2, chain1] : by_second) {
    const ExcitationState moved = evolve(chain1, modes, t);
    for (const auto &[c1, a] : moved.amplitudes()) {
      by_first.try_emplace(c1, n).first->second.add(c2, a);
    }
  }
  TwoChainState out(n);
  for (const auto &[c1, chain2] : by_first) {
    const ExcitationState moved = evolve(chain2, modes, t);
    for (const auto &[c2, a] : moved.amplitudes()) out.add(c1, c2, a);
  }
  return out;
}

TwoChainState apply_controlled(const TwoChainState &state, const std::vector<int> &control_block,
                               std::pair<int, int> target_pair, const Eigen::Matrix4cd &gate) {
  TwoChainState out(state.n_sites());
  for (const auto &[k, a] : state.amplitudes()) {
    if (touches(k.first, control_block)) {
      out.add(k.first, k.second, a);
      continue;
    }
    const int in = (k.second.contains(target_pair.first) ? 2 : 0) + (k.second.contains(target_pair.second) ? 1 : 0);
    for (int o = 0; o < 4; ++o) {
      const Complex g = gate(o, in);
      if (g != 0.0) out.add(k.first, with_pair_bits(k.second, target_pair, o), g * a);
    }
  }
  return out;
}

std::vector<double> chain2_block_distribution(const TwoChainState &state, const std::vector<int> &block) {
  const int b = static_cast<int>(block.size());
  std::vector<double> p(std::size_t{1} << b, 0.0);
  for (const auto &[k, a] : state.amplitudes()) {
    int mask = 0;
    for (int i = 0; i < b; ++i) {
      if (k.second.contains(block[i])) mask |= 1 << (b - 1 - i);
    }
    p[mask] += std::norm(a);
  }
  return p;
}

DualChainOutcome dual_chain_protocol(const ChainParams &params, const BlochState &bloch, double t_wait) {
  params.validate();
  bloch.validate();
  const int n = params.n_sites;
  if (n < 6) throw BlockOverlapError("dual-chain protocol needs N >= 6 so sending and receiving blocks are disjoint");
  if (!std::isfinite(t_wait) || t_wait < 0.0) throw ValidationError("t_wait must be finite and >= 0");
  const LogicalEncoding enc(EncodingName::VacuumSinglet);
  const ModeTable modes(params);
  const ExcitationState chain1 = logical_state(enc, bloch, Placement::Start, n);
  const ExcitationState chain2 = logical_basis_state(enc, 0, Placement::Start, n);
  const std::vector<int> send{1, 2, 3};
  const std::vector<int> recv = last_block(n);

  TwoChainState state = apply_controlled(TwoChainState::product(chain1, chain2), send, {1, 3}, logical_x());
  state = evolve(state, modes, t_wait);

  DualChainOutcome out{};
  // Code-space weight on both receiving blocks, before decoding.
  const ExcitationState code[2] = {logical_basis_state(enc, 0, Placement::End, n),
                                   logical_basis_state(enc, 1, Placement::End, n)};
  double in_code = 0.0;
  for (const auto &x : code) {
    for (const auto &y : code) {
      Complex acc = 0.0;
      for (const auto &[c1, a1] : x.amplitudes()) {
        for (const auto &[c2, a2] : y.amplitudes()) {
          const auto it = state.amplitudes().find({c1, c2});
          if (it != state.amplitudes().end()) acc += std::conj(a1 * a2) * it->second;
        }
      }
      in_code += std::norm(acc);
    }
  }
  out.leakage = std::clamp(1.0 - in_code / state.norm_squared(), 0.0, 1.0);

  state = apply_controlled(state, recv, {n - 2, n}, logical_x().adjoint());
  out.outcome_probabilities = chain2_block_distribution(state, recv);
  out.p_confirm = out.outcome_probabilities[0];

  const Eigen::VectorXcd phi = block_vector(target_state(enc, bloch, n), recv);
  out.f_unconditioned = normalised_fidelity(chain1_block_state(state, recv), phi);
  TwoChainState confirmed(n);
  for (const auto &[k, a] : state.amplitudes()) {
    if (!touches(k.second, recv)) confirmed.add(k.first, k.second, a);
  }
  out.f_conditioned = normalised_fidelity(chain1_block_state(confirmed, recv), phi);
  out.f_single_chain = fidelity(evolve(chain1, modes, t_wait), target_state(enc, bloch, n), recv);
  return out;
}

DualChainOutcome dual_chain_protocol_exact(const ChainParams &params, const BlochState &bloch,
                                           double t_wait) {
  params.validate();
  bloch.validate();
  const int n = params.n_sites;
  if (n < 6) throw BlockOverlapError("dual-chain protocol needs N >= 6");
  const int total = 2 * n;
  const LogicalEncoding enc(EncodingName::VacuumSinglet);
  const oracle::ExactEvolver joint(oracle::build_decoupled_chains(params, 2));

  // Joint basis: chain 1 on sites 1..N, chain 2 on N+1..2N.
  ExcitationState start(total);
  const ExcitationState chain1 = logical_state(enc, bloch, Placement::Start, n);
  for (const auto &[c, a] : chain1.amplitudes()) start.add(c, a);
  Eigen::VectorXcd psi = oracle::embed(start);

  auto bit = [&](int site) { return oracle::site_bit(total, site); };
  auto controlled = [&](const Eigen::VectorXcd &in, const std::vector<int> &control, int p1, int p2,
                        const Eigen::Matrix4cd &gate) {
    std::uint64_t control_mask = 0;
    for (int s : control) control_mask |= bit(s);
    const std::uint64_t pair_mask = bit(p1) | bit(p2);
    Eigen::VectorXcd result = Eigen::VectorXcd::Zero(in.size());
    for (Eigen::Index s = 0; s < in.size(); ++s) {
      if (in(s) == 0.0) continue;
      const auto bits = static_cast<std::uint64_t>(s);
      if (bits & control_mask) {
        result(s) += in(s);
        continue;
      }
      const int local = ((bits & bit(p1)) ? 2 : 0) + ((bits & bit(p2)) ? 1 : 0);
      for (int o = 0; o < 4; ++o) {
        const std::uint64_t dst = (bits & ~pair_mask) | ((o & 2) ? bit(p1) : 0) | ((o & 1) ? bit(p2) : 0);
        result(static_cast<Eigen::Index>(dst)) += gate(o, local) * in(s);
      }
    }
    return result;
  };

  psi = controlled(psi, {1, 2, 3}, n + 1, n + 3, logical_x());
  psi = joint.evolve(psi, t_wait);

  DualChainOutcome out{};
  double in_code = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      ExcitationState s(total);
      const ExcitationState bx = logical_basis_state(enc, x, Placement::End, n);
      const ExcitationState by = logical_basis_state(enc, y, Placement::End, n);
      for (const auto &[c1, a1] : bx.amplitudes()) {
        for (const auto &[c2, a2] : by.amplitudes()) {
          std::vector<int> sites(c1.begin(), c1.end());
          for (int q : c2) sites.push_back(q + n);
          s.add(Configuration(std::span<const int>(sites)), a1 * a2);
        }
      }
      in_code += std::norm(oracle::embed(s).dot(psi));
    }
  }
  out.leakage = std::clamp(1.0 - in_code / psi.squaredNorm(), 0.0, 1.0);

  psi = controlled(psi, {n - 2, n - 1, n}, 2 * n - 2, 2 * n, logical_x().adjoint());

  const std::vector<int> recv2{2 * n - 2, 2 * n - 1, 2 * n};
  const ReducedBlockState chain2_block = oracle::partial_trace_dense(psi, total, recv2);
  out.outcome_probabilities.resize(8);
  for (int m = 0; m < 8; ++m) out.outcome_probabilities[m] = chain2_block.matrix(m, m).real();
  out.p_confirm = out.outcome_probabilities[0];

  const std::vector<int> recv = last_block(n);
  const Eigen::VectorXcd phi = block_vector(target_state(enc, bloch, n), recv);
  out.f_unconditioned = normalised_fidelity(oracle::partial_trace_dense(psi, total, recv), phi);
  Eigen::VectorXcd confirmed = psi;
  const std::uint64_t recv2_mask = bit(2 * n - 2) | bit(2 * n - 1) | bit(2 * n);
  for (Eigen::Index s = 0; s < confirmed.size(); ++s) {
    if (static_cast<std::uint64_t>(s) & recv2_mask) confirmed(s) = 0.0;
  }
  out.f_conditioned = normalised_fidelity(oracle::partial_trace_dense(confirmed, total, recv), phi);

  const oracle::ExactEvolver single(oracle::build_hamiltonian(params));
  const Eigen::VectorXcd alone =
      single.evolve(oracle::embed(chain1), t_wait);
  out.f_single_chain = std::sqrt(fidelity_squared(oracle::partial_trace_dense(alone, n, recv), phi));
  return out;
}

}  // namespace magnon
