#include "magnon/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

// Splits a configuration into its block bitmask and the part outside the block.
std::pair<int, Configuration> split(const Configuration &c, const std::vector<int> &block) {
  const int b = static_cast<int>(block.size());
  int mask = 0;
  std::array<int, Configuration::kCapacity> rest{};
  int n_rest = 0;
  for (int site : c) {
    const auto it = std::lower_bound(block.begin(), block.end(), site);
    if (it != block.end() && *it == site) {
      mask |= 1 << (b - 1 - static_cast<int>(it - block.begin()));
    } else {
      rest[n_rest++] = site;
    }
  }
  return {mask, Configuration(std::span<const int>(rest.data(), n_rest))};
}

void check_block(const std::vector<int> &block, int n_sites) {
  if (block.empty()) throw ValidationError("block must contain at least one site");
  if (block.size() > 20) throw ValidationError("block too large for a dense reduced state");
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (block[i] < 1 || block[i] > n_sites) throw ValidationError("block site outside the chain");
    if (i > 0 && block[i] <= block[i - 1]) throw ValidationError("block sites must be ascending");
  }
}

Configuration merge(const Configuration &a, const Configuration &b) {
  std::array<int, Configuration::kCapacity * 2> s{};
  int n = 0;
  for (int x : a) s[n++] = x;
  for (int x : b) s[n++] = x;
  std::sort(s.begin(), s.begin() + n);
  return Configuration(std::span<const int>(s.data(), n));
}

// All subsets of `pool` with `k` elements (k <= 2), as configurations.
std::vector<Configuration> subsets(const std::vector<int> &pool, int k) {
  std::vector<Configuration> out;
  if (k == 0) {
    out.emplace_back();
  } else if (k == 1) {
    for (int s : pool) out.push_back(Configuration{s});
  } else if (k == 2) {
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) out.push_back(Configuration{pool[i], pool[j]});
    }
  } else {
    throw UnsupportedSectorError("analytic evolution supports at most two magnons");
  }
  return out;
}

}  // namespace

ReducedBlockState reduce_to_block(const ExcitationState &state, const std::vector<int> &block_sites) {
  check_block(block_sites, state.n_sites());
  const int dim = 1 << block_sites.size();
  std::map<Configuration, std::vector<std::pair<int, Complex>>> groups;
  for (const auto &[c, a] : state.amplitudes()) {
    auto [mask, rest] = split(c, block_sites);
    groups[rest].emplace_back(mask, a);
  }
  ReducedBlockState out{block_sites, Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto &[rest, entries] : groups) {
    for (const auto &[m1, a1] : entries) {
      for (const auto &[m2, a2] : entries) out.matrix(m1, m2) += a1 * std::conj(a2);
    }
  }
  return out;
}

Eigen::VectorXcd block_vector(const ExcitationState &target, const std::vector<int> &block_sites) {
  check_block(block_sites, target.n_sites());
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(1 << block_sites.size());
  for (const auto &[c, a] : target.amplitudes()) {
    auto [mask, rest] = split(c, block_sites);
    if (!rest.empty()) {
      if (a == 0.0) continue;
      throw BlockMismatchError("target has excitations outside the receiving block");
    }
    phi(mask) += a;
  }
  return phi;
}

double fidelity_squared(const ReducedBlockState &rho, const Eigen::VectorXcd &phi) {
  const double f2 = (phi.adjoint() * rho.matrix * phi)(0, 0).real();
  return std::clamp(f2, 0.0, 1.0);
}

double fidelity(const ExcitationState &state, const ExcitationState &target,
                const std::vector<int> &block_sites) {
  const Eigen::VectorXcd phi = block_vector(target, block_sites);
  return std::sqrt(fidelity_squared(reduce_to_block(state, block_sites), phi));
}

double two_spin_fidelity_closed_form(const PropagatorMatrix &prop, Complex alpha, Complex beta) {
  const int n = prop.n_sites();
  if (n < 2) throw ChainTooShortError("two-spin encoding needs at least two sites");
  auto a = [&](int l) { return beta * prop(1, l) + alpha * prop(2, l); };
  return std::abs(std::conj(alpha) * a(n) + std::conj(beta) * a(n - 1));
}

double average_fidelity_closed_form(const PropagatorMatrix &prop) {
  const int n = prop.n_sites();
  if (n < 5) throw BlockOverlapError("average fidelity closed form needs N >= 5");
  const double r2 = std::numbers::sqrt2;
  auto g = [&](int i) { return (prop(3, i) - prop(1, i)) / r2; };
  const Complex gn = g(n), gn1 = g(n - 1), gn2 = g(n - 2);
  const Complex x = (gn - gn2) / r2;
  return (3.0 + 2.0 * x.real() + 2.0 * std::norm(x) - std::norm(gn) - std::norm(gn1) - std::norm(gn2)) / 6.0;
}

double single_spin_average_fidelity(const PropagatorMatrix &prop) {
  const Complex f = prop(1, prop.n_sites());
  return (3.0 + 2.0 * f.real() + std::norm(f)) / 6.0;
}

double LogicalTransferMap::fidelity_squared(const BlochState &bloch) const {
  const auto [c0, c1] = bloch.coefficients();
  const Complex c[2] = {c0, c1};
  Eigen::Vector4cd v;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) v(2 * x + y) = std::conj(c[x]) * c[y];
  }
  return std::clamp((v.adjoint() * gram_ * v)(0, 0).real(), 0.0, 1.0);
}

double LogicalTransferMap::fidelity(const BlochState &bloch) const {
  return std::sqrt(fidelity_squared(bloch));
}

double LogicalTransferMap::average_fidelity() const {
  // Haar moments on C^2: E[c_a c_b conj(c_c) conj(c_d)] = (d_ac d_bd + d_ad d_bc) / 6.
  const Complex diag_block = gram_(0, 0) + gram_(0, 3) + gram_(3, 0) + gram_(3, 3);
  return std::clamp((diag_block + gram_.trace()).real() / 6.0, 0.0, 1.0);
}

LogicalTransferMap transfer_map(const LogicalEncoding &enc, const PropagatorMatrix &prop) {
  return transfer_map(enc, prop, prop.n_sites() - enc.block_size() + 1);
}

LogicalTransferMap transfer_map(const LogicalEncoding &enc, const PropagatorMatrix &prop,
                                int receive_first_site) {
  const int n = prop.n_sites();
  const int b = enc.block_size();
  if (receive_first_site < 1 || receive_first_site + b - 1 > n) {
    throw ChainTooShortError("receiving block does not fit on the chain");
  }
  const ExcitationState inputs[2] = {logical_basis_state(enc, 0, Placement::Start, n),
                                     logical_basis_state(enc, 1, Placement::Start, n)};
  std::vector<int> outside;
  for (int s = 1; s <= n; ++s) {
    if (s < receive_first_site || s >= receive_first_site + b) outside.push_back(s);
  }
  std::vector<int> input_sectors;
  for (const auto &in : inputs) {
    for (int m : in.sectors()) {
      if (std::find(input_sectors.begin(), input_sectors.end(), m) == input_sectors.end()) {
        input_sectors.push_back(m);
      }
    }
  }

  // Target patterns a (shifted to the receiving block) with amplitudes phi_x(a).
  std::map<Configuration, std::array<Complex, 2>> patterns;
  for (int x = 0; x < 2; ++x) {
    for (const auto &[c, a] : enc.basis(x)) patterns[c.shifted(receive_first_site - 1)][x] += a;
  }

  // K_{xy}(o) = sum_a conj(phi_x(a)) psi_y(a + o)
  std::map<Configuration, Eigen::Vector4cd> k_of;
  for (const auto &[a, phi] : patterns) {
    for (int m : input_sectors) {
      const int extra = m - a.size();
      if (extra < 0) continue;
      for (const Configuration &o : subsets(outside, extra)) {
        const Configuration out = merge(a, o);
        const Complex psi[2] = {evolved_amplitude(inputs[0], prop, out),
                                evolved_amplitude(inputs[1], prop, out)};
        auto [it, inserted] = k_of.try_emplace(o, Eigen::Vector4cd::Zero());
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) it->second(2 * x + y) += std::conj(phi[x]) * psi[y];
        }
      }
    }
  }
  Eigen::Matrix4cd gram = Eigen::Matrix4cd::Zero();
  for (const auto &[o, k] : k_of) gram += k.conjugate() * k.transpose();
  return LogicalTransferMap(gram);
}

std::vector<Peak> find_peaks(const FidelityTrace &trace, double prominence) {
  const auto &t = trace.times;
  const auto &v = trace.values;
  if (t.size() != v.size()) throw ValidationError("trace times and values differ in length");
  std::vector<Peak> peaks;
  const std::size_t n = v.size();
  if (n < 3) return peaks;
  const double dt = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
    // Skip to the end of a plateau; the peak sits in its middle.
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    if (j + 1 < n && v[j + 1] > v[i]) continue;
    double left_min = v[i];
    for (std::size_t k = i; k-- > 0;) {
      if (v[k] > v[i]) break;
      left_min = std::min(left_min, v[k]);
    }
    double right_min = v[i];
    for (std::size_t k = j + 1; k < n; ++k) {
      if (v[k] > v[i]) break;
      right_min = std::min(right_min, v[k]);
    }
    if (v[i] - std::max(left_min, right_min) < prominence) {
      i = j;
      continue;
    }
    Peak p{0.5 * (t[i] + t[j]), v[i]};
    if (i == j) {
      const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom < 0.0) {
        const double delta = 0.5 * (y0 - y2) / denom;
        p.time = t[i] + delta * dt;
        p.value = y1 - 0.25 * (y0 - y2) * delta;
      }
    }
    peaks.push_back(p);
    i = j;
  }
  return peaks;
}

FidelityTrace fidelity_trace(const ModeTable &modes, const ExcitationState &initial,
                             const ExcitationState &target, const std::vector<int> &block_sites,
                             const std::vector<double> &times, double prominence) {
  const Eigen::VectorXcd phi = block_vector(target, block_sites);
  FidelityTrace trace;
  trace.times = times;
  trace.values.reserve(times.size());
  for (double t : times) {
    const ExcitationState psi = evolve(initial, modes, t);
    trace.values.push_back(std::sqrt(fidelity_squared(reduce_to_block(psi, block_sites), phi)));
  }
  trace.peaks = find_peaks(trace, prominence);
  return trace;
}

}  // namespace magnon
