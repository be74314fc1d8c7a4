#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "magnon/chain_model.hpp"
#include "magnon/fidelity.hpp"
#include "magnon/magnon_dynamics.hpp"

namespace magnon::oracle {

// Basis index convention: site 1 is the most significant bit, bit 1 = spin up.
inline std::uint64_t site_bit(int n_sites, int site) { return std::uint64_t{1} << (n_sites - site); }

inline constexpr int kDefaultDimensionCap = 14;

/// Dense real-symmetric Hamiltonian in the spin z-basis.
struct DenseHamiltonian {
  int n_sites = 0;
  Eigen::MatrixXd matrix;
};

// Uniform open chain. Field term is +h sum sz, so the all-down state sits at
// -hN and one magnon costs 2h - 2J cos q.
DenseHamiltonian build_hamiltonian(const ChainParams &params, int dimension_cap = kDefaultDimensionCap);

// Several identical chains laid end to end with no coupling between them
// (chain c occupies sites c*N+1 .. (c+1)*N).
DenseHamiltonian build_decoupled_chains(const ChainParams &params, int n_chains,
                                        int dimension_cap = kDefaultDimensionCap);

/// Exact e^{-iHt} by spectral decomposition. H commutes with total sz, so
/// each excitation sector is diagonalised on its own, on first use.
class ExactEvolver {
 public:
  explicit ExactEvolver(DenseHamiltonian hamiltonian);

  const DenseHamiltonian &hamiltonian() const { return h_; }
  Eigen::VectorXcd evolve(const Eigen::VectorXcd &psi, double t) const;
  double energy(const Eigen::VectorXcd &psi) const;

 private:
  struct Sector {
    std::vector<std::uint32_t> states;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    std::once_flag once;
  };
  const Sector &sector(int m) const;

  DenseHamiltonian h_;
  std::vector<std::unique_ptr<Sector>> sectors_;
};

Eigen::VectorXcd evolve_exact(const DenseHamiltonian &h, const Eigen::VectorXcd &psi, double t);

// Total number of up spins in every basis state with weight, <sum n_i>.
double excitation_number(const Eigen::VectorXcd &psi);

Eigen::VectorXcd embed(const ExcitationState &state);
// Inverse of embed; throws SectorOverflowError if weight above `sector_cap`
// excitations exceeds 1e-10.
ExcitationState extract(const Eigen::VectorXcd &psi, int n_sites, int sector_cap = 2);

ReducedBlockState partial_trace_dense(const Eigen::VectorXcd &psi, int n_sites,
                                      const std::vector<int> &keep_sites);

}  // namespace magnon::oracle
