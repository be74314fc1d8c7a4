#include "magnon/exact_oracle.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "magnon/errors.hpp"

namespace magnon::oracle {

namespace {

void check_dimension(int n_sites, int cap) {
  if (n_sites > cap) {
    throw DimensionCapError("dense Hamiltonian on " + std::to_string(n_sites) +
                            " sites exceeds the cap of " + std::to_string(cap));
  }
  if (n_sites < 1) throw ValidationError("dense Hamiltonian needs at least one site");
}

// bond_weight[i] scales bond (i+1, i+2); 1-based sites.
DenseHamiltonian build(const ChainParams &params, int n_sites, const std::vector<double> &bond_weight) {
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  DenseHamiltonian h{n_sites, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                    static_cast<Eigen::Index>(dim))};
  for (std::uint64_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int i = 1; i <= n_sites; ++i) {
      const double sz = (s & site_bit(n_sites, i)) ? 1.0 : -1.0;
      diag += params.h_field * sz;
    }
    for (int i = 1; i < n_sites; ++i) {
      const double w = bond_weight[i - 1];
      if (w == 0.0) continue;
      const std::uint64_t bi = site_bit(n_sites, i), bj = site_bit(n_sites, i + 1);
      const bool ui = s & bi, uj = s & bj;
      diag += w * params.j_z * (ui == uj ? 1.0 : -1.0);
      if (ui != uj) {
        // -J/2 (sx sx + sy sy) = -J (s+ s- + s- s+): flips an anti-aligned pair.
        const std::uint64_t t = s ^ bi ^ bj;
        h.matrix(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += -w * params.j_xy;
      }
    }
    h.matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += diag;
  }
  return h;
}

}  // namespace

DenseHamiltonian build_hamiltonian(const ChainParams &params, int dimension_cap) {
  params.validate();
  check_dimension(params.n_sites, dimension_cap);
  return build(params, params.n_sites, std::vector<double>(params.n_sites, 1.0));
}

DenseHamiltonian build_decoupled_chains(const ChainParams &params, int n_chains, int dimension_cap) {
  params.validate();
  if (n_chains < 1) throw ValidationError("need at least one chain");
  const int total = params.n_sites * n_chains;
  check_dimension(total, dimension_cap);
  std::vector<double> weight(total, 1.0);
  for (int c = 1; c < n_chains; ++c) weight[c * params.n_sites - 1] = 0.0;
  return build(params, total, weight);
}

ExactEvolver::ExactEvolver(DenseHamiltonian hamiltonian) : h_(std::move(hamiltonian)) {
  const int n = h_.n_sites;
  sectors_.resize(n + 1);
  for (auto &s : sectors_) s = std::make_unique<Sector>();
  const std::uint32_t dim = std::uint32_t{1} << n;
  for (std::uint32_t s = 0; s < dim; ++s) sectors_[std::popcount(s)]->states.push_back(s);
}

const ExactEvolver::Sector &ExactEvolver::sector(int m) const {
  Sector &sec = *sectors_[m];
  std::call_once(sec.once, [&] {
    const auto d = static_cast<Eigen::Index>(sec.states.size());
    Eigen::MatrixXd block(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) block(a, b) = h_.matrix(sec.states[a], sec.states[b]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
    if (solver.info() != Eigen::Success) throw InvariantError("sector eigensolver failed");
    sec.eigenvalues = solver.eigenvalues();
    sec.eigenvectors = solver.eigenvectors();
  });
  return sec;
}

Eigen::VectorXcd ExactEvolver::evolve(const Eigen::VectorXcd &psi, double t) const {
  if (psi.size() != h_.matrix.rows()) throw ValidationError("state dimension does not match H");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.size());
  for (int m = 0; m <= h_.n_sites; ++m) {
    const auto &states = sectors_[m]->states;
    Eigen::VectorXcd local(static_cast<Eigen::Index>(states.size()));
    bool any = false;
    for (std::size_t a = 0; a < states.size(); ++a) {
      local(static_cast<Eigen::Index>(a)) = psi(states[a]);
      any = any || psi(states[a]) != 0.0;
    }
    if (!any) continue;
    const Sector &sec = sector(m);
    Eigen::VectorXcd coeff = sec.eigenvectors.transpose().cast<Complex>() * local;
    for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::polar(1.0, -sec.eigenvalues(k) * t);
    const Eigen::VectorXcd back = sec.eigenvectors.cast<Complex>() * coeff;
    for (std::size_t a = 0; a < states.size(); ++a) out(states[a]) = back(static_cast<Eigen::Index>(a));
  }
  return out;
}

double ExactEvolver::energy(const Eigen::VectorXcd &psi) const {
  return (psi.adjoint() * (h_.matrix.cast<Complex>() * psi))(0, 0).real();
}

Eigen::VectorXcd evolve_exact(const DenseHamiltonian &h, const Eigen::VectorXcd &psi, double t) {
  return ExactEvolver(h).evolve(psi, t);
}

double excitation_number(const Eigen::VectorXcd &psi) {
  double acc = 0.0;
  for (Eigen::Index s = 0; s < psi.size(); ++s) {
    acc += std::norm(psi(s)) * std::popcount(static_cast<std::uint64_t>(s));
  }
  return acc;
}

Eigen::VectorXcd embed(const ExcitationState &state) {
  const int n = state.n_sites();
  if (n > 24) throw DimensionCapError("embedding limited to 24 sites");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  for (const auto &[c, a] : state.amplitudes()) {
    std::uint64_t idx = 0;
    for (int site : c) idx |= site_bit(n, site);
    psi(static_cast<Eigen::Index>(idx)) += a;
  }
  return psi;
}

ExcitationState extract(const Eigen::VectorXcd &psi, int n_sites, int sector_cap) {
  if (psi.size() != (Eigen::Index{1} << n_sites)) throw ValidationError("state dimension mismatch");
  ExcitationState out(n_sites);
  double overflow = 0.0;
  for (Eigen::Index s = 0; s < psi.size(); ++s) {
    if (psi(s) == 0.0) continue;
    const auto bits = static_cast<std::uint64_t>(s);
    if (std::popcount(bits) > sector_cap) {
      overflow += std::norm(psi(s));
      continue;
    }
    std::vector<int> sites;
    for (int site = 1; site <= n_sites; ++site) {
      if (bits & site_bit(n_sites, site)) sites.push_back(site);
    }
    out.add(Configuration(std::span<const int>(sites)), psi(s));
  }
  if (overflow > 1e-10) {
    throw SectorOverflowError("state has weight " + std::to_string(overflow) + " above " +
                              std::to_string(sector_cap) + " excitations");
  }
  return out;
}

ReducedBlockState partial_trace_dense(const Eigen::VectorXcd &psi, int n_sites,
                                      const std::vector<int> &keep_sites) {
  const int b = static_cast<int>(keep_sites.size());
  std::uint64_t keep_mask = 0;
  for (int site : keep_sites) keep_mask |= site_bit(n_sites, site);
  ReducedBlockState out{keep_sites, Eigen::MatrixXcd::Zero(1 << b, 1 << b)};
  auto local = [&](std::uint64_t s) {
    int m = 0;
    for (int i = 0; i < b; ++i) {
      if (s & site_bit(n_sites, keep_sites[i])) m |= 1 << (b - 1 - i);
    }
    return m;
  };
  // Bucket amplitudes by environment bits.
  std::vector<std::vector<std::pair<int, Complex>>> env(std::size_t{1} << n_sites);
  for (Eigen::Index s = 0; s < psi.size(); ++s) {
    if (psi(s) == 0.0) continue;
    const auto bits = static_cast<std::uint64_t>(s);
    env[bits & ~keep_mask].emplace_back(local(bits), psi(s));
  }
  for (const auto &bucket : env) {
    for (const auto &[m1, a1] : bucket) {
      for (const auto &[m2, a2] : bucket) out.matrix(m1, m2) += a1 * std::conj(a2);
    }
  }
  return out;
}

}  // namespace magnon::oracle
