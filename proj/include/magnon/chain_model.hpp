#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace magnon {

using Complex = std::complex<double>;

// Parameters of the open XY chain
//   H = -J/2 sum (sx sx + sy sy) + Jz sum sz sz + h sum sz
// Energies in units of J, time in units of 1/J.
struct ChainParams {
  int n_sites = 2;
  double j_xy = 1.0;
  double j_z = 0.0;
  double h_field = 1.0;

  void validate() const;
};

struct MagnonMode {
  int index;        // m in 1..N
  double momentum;  // q_m = pi m / (N + 1)
  double energy;    // E_m = 2h - 2J cos(q_m)
};

std::vector<MagnonMode> magnon_modes(const ChainParams &params);

// Energy of the all-down reference state as seen by the analytic engine
// (Jz is not modelled there, so this is -h N).
double vacuum_energy(const ChainParams &params);

/// Single-magnon propagator f_{j,l}(t) at a fixed time.
///
/// Either the full N x N matrix, or a rows x cols sub-block. Entries are
/// symmetric in (j, l), so (j, l) is available when (j, l) or (l, j) falls in
/// the stored block. Sites are 1-based.
class PropagatorMatrix {
 public:
  PropagatorMatrix(int n_sites, double time, std::vector<int> row_sites,
                   Eigen::MatrixXcd rows);
  PropagatorMatrix(int n_sites, double time, std::vector<int> row_sites,
                   std::vector<int> col_sites, Eigen::MatrixXcd block);

  int n_sites() const { return n_sites_; }
  double time() const { return time_; }
  bool is_full() const {
    return static_cast<int>(row_sites_.size()) == n_sites_ && static_cast<int>(col_sites_.size()) == n_sites_;
  }
  bool has_row(int site) const;
  bool has_entry(int j, int l) const;
  const std::vector<int> &row_sites() const { return row_sites_; }

  Complex operator()(int j, int l) const;

  // Full matrix; throws ValidationError when only a sub-block was computed.
  Eigen::MatrixXcd dense() const;

  // Same propagator with the field raised by dh: every entry gains e^{-2i dh t}.
  PropagatorMatrix field_shifted(double dh) const;

 private:
  int n_sites_;
  double time_;
  std::vector<int> row_sites_;
  std::vector<int> col_sites_;
  std::vector<int> row_slot_;  // site -> row index in block_, or -1
  std::vector<int> col_slot_;
  Eigen::MatrixXcd block_;
};

/// Precomputed mode table: normalised sine eigenvectors and magnon energies.
/// Amortises the sine evaluations across many propagator requests.
class ModeTable {
 public:
  explicit ModeTable(const ChainParams &params);

  const ChainParams &params() const { return params_; }
  int n_sites() const { return params_.n_sites; }
  const std::vector<MagnonMode> &modes() const { return modes_; }

  PropagatorMatrix propagator(double t) const;
  PropagatorMatrix propagator(double t, std::span<const int> rows) const;
  PropagatorMatrix propagator(double t, std::span<const int> rows, std::span<const int> cols) const;
  Complex entry(int j, int l, double t) const;

 private:
  Eigen::VectorXcd phases(double t) const;

  ChainParams params_;
  std::vector<MagnonMode> modes_;
  Eigen::MatrixXcd vectors_;  // (site - 1, mode - 1) -> sqrt(2/(N+1)) sin(q_m j)
};

PropagatorMatrix propagator(const ChainParams &params, double t);

}  // namespace magnon
