#include "magnon/chain_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "magnon/errors.hpp"

namespace magnon {

void ChainParams::validate() const {
  if (n_sites < 1) {
    throw ValidationError("n_sites must be >= 1, got " + std::to_string(n_sites));
  }
  if (j_xy == 0.0 || !std::isfinite(j_xy)) {
    throw ValidationError("j_xy must be finite and nonzero");
  }
  if (!std::isfinite(j_z) || !std::isfinite(h_field)) {
    throw ValidationError("j_z and h_field must be finite");
  }
}

std::vector<MagnonMode> magnon_modes(const ChainParams &params) {
  params.validate();
  const int n = params.n_sites;
  std::vector<MagnonMode> modes;
  modes.reserve(n);
  for (int m = 1; m <= n; ++m) {
    const double q = std::numbers::pi * m / (n + 1);
    modes.push_back({m, q, 2.0 * params.h_field - 2.0 * params.j_xy * std::cos(q)});
  }
  return modes;
}

double vacuum_energy(const ChainParams &params) { return -params.h_field * params.n_sites; }

namespace {

std::vector<int> all_sites(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return v;
}

std::vector<int> slots(const std::vector<int> &sites, int n_sites) {
  std::vector<int> slot(n_sites + 1, -1);
  for (std::size_t r = 0; r < sites.size(); ++r) {
    if (sites[r] < 1 || sites[r] > n_sites) {
      throw ValidationError("propagator site out of range: " + std::to_string(sites[r]));
    }
    slot[sites[r]] = static_cast<int>(r);
  }
  return slot;
}

}  // namespace

PropagatorMatrix::PropagatorMatrix(int n_sites, double time, std::vector<int> row_sites,
                                   Eigen::MatrixXcd rows)
    : PropagatorMatrix(n_sites, time, std::move(row_sites), all_sites(n_sites), std::move(rows)) {}

PropagatorMatrix::PropagatorMatrix(int n_sites, double time, std::vector<int> row_sites,
                                   std::vector<int> col_sites, Eigen::MatrixXcd block)
    : n_sites_(n_sites),
      time_(time),
      row_sites_(std::move(row_sites)),
      col_sites_(std::move(col_sites)),
      row_slot_(slots(row_sites_, n_sites)),
      col_slot_(slots(col_sites_, n_sites)),
      block_(std::move(block)) {
  if (block_.rows() != static_cast<Eigen::Index>(row_sites_.size()) ||
      block_.cols() != static_cast<Eigen::Index>(col_sites_.size())) {
    throw ValidationError("propagator block has inconsistent shape");
  }
}

bool PropagatorMatrix::has_row(int site) const {
  return site >= 1 && site <= n_sites_ && row_slot_[site] >= 0;
}

bool PropagatorMatrix::has_entry(int j, int l) const {
  if (j < 1 || j > n_sites_ || l < 1 || l > n_sites_) return false;
  return (row_slot_[j] >= 0 && col_slot_[l] >= 0) || (row_slot_[l] >= 0 && col_slot_[j] >= 0);
}

Complex PropagatorMatrix::operator()(int j, int l) const {
  if (j >= 1 && j <= n_sites_ && l >= 1 && l <= n_sites_) {
    if (row_slot_[j] >= 0 && col_slot_[l] >= 0) return block_(row_slot_[j], col_slot_[l]);
    if (row_slot_[l] >= 0 && col_slot_[j] >= 0) return block_(row_slot_[l], col_slot_[j]);
  }
  throw ValidationError("propagator entry (" + std::to_string(j) + "," + std::to_string(l) +
                        ") not computed");
}

Eigen::MatrixXcd PropagatorMatrix::dense() const {
  if (!is_full()) throw ValidationError("propagator holds only a sub-block");
  Eigen::MatrixXcd out(n_sites_, n_sites_);
  for (int j = 1; j <= n_sites_; ++j) {
    for (int l = 1; l <= n_sites_; ++l) out(j - 1, l - 1) = block_(row_slot_[j], col_slot_[l]);
  }
  return out;
}

PropagatorMatrix PropagatorMatrix::field_shifted(double dh) const {
  return PropagatorMatrix(n_sites_, time_, row_sites_, col_sites_,
                          block_ * std::polar(1.0, -2.0 * dh * time_));
}

ModeTable::ModeTable(const ChainParams &params)
    : params_(params), modes_(magnon_modes(params)), vectors_(params.n_sites, params.n_sites) {
  const int n = params.n_sites;
  const double norm = std::sqrt(2.0 / (n + 1));
  for (int j = 1; j <= n; ++j) {
    for (int m = 1; m <= n; ++m) {
      vectors_(j - 1, m - 1) = norm * std::sin(modes_[m - 1].momentum * j);
    }
  }
}

Eigen::VectorXcd ModeTable::phases(double t) const {
  if (!std::isfinite(t)) throw ValidationError("time must be finite");
  Eigen::VectorXcd p(n_sites());
  for (int m = 0; m < n_sites(); ++m) p(m) = std::polar(1.0, -modes_[m].energy * t);
  return p;
}

PropagatorMatrix ModeTable::propagator(double t) const {
  const std::vector<int> rows = all_sites(n_sites());
  return propagator(t, rows);
}

PropagatorMatrix ModeTable::propagator(double t, std::span<const int> rows) const {
  const std::vector<int> cols = all_sites(n_sites());
  return propagator(t, rows, cols);
}

PropagatorMatrix ModeTable::propagator(double t, std::span<const int> rows,
                                       std::span<const int> cols) const {
  const Eigen::VectorXcd p = phases(t);
  Eigen::MatrixXcd weighted(static_cast<Eigen::Index>(rows.size()), n_sites());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 1 || rows[r] > n_sites()) {
      throw ValidationError("propagator row site out of range: " + std::to_string(rows[r]));
    }
    weighted.row(static_cast<Eigen::Index>(r)) =
        vectors_.row(rows[r] - 1).cwiseProduct(p.transpose());
  }
  Eigen::MatrixXcd right(n_sites(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] < 1 || cols[c] > n_sites()) {
      throw ValidationError("propagator column site out of range: " + std::to_string(cols[c]));
    }
    right.col(static_cast<Eigen::Index>(c)) = vectors_.row(cols[c] - 1).transpose();
  }
  Eigen::MatrixXcd f = weighted * right;
  return PropagatorMatrix(n_sites(), t, std::vector<int>(rows.begin(), rows.end()),
                          std::vector<int>(cols.begin(), cols.end()), std::move(f));
}

Complex ModeTable::entry(int j, int l, double t) const {
  const Eigen::VectorXcd p = phases(t);
  Complex acc = 0.0;
  for (int m = 0; m < n_sites(); ++m) acc += vectors_(j - 1, m) * vectors_(l - 1, m) * p(m);
  return acc;
}

PropagatorMatrix propagator(const ChainParams &params, double t) {
  return ModeTable(params).propagator(t);
}

}  // namespace magnon
