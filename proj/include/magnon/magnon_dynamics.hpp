#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "magnon/chain_model.hpp"

namespace magnon {

/// Strictly ascending list of excited (spin-up) sites, 1-based.
///
/// Stands for c+_{l1} ... c+_{lM} |0>. Under the Jordan-Wigner string used
/// here every canonical product acting on the all-down state is exactly the
/// spin basis state with ups at l1..lM (no extra sign).
class Configuration {
 public:
  static constexpr int kCapacity = 4;

  Configuration() = default;
  Configuration(std::initializer_list<int> sites);
  explicit Configuration(std::span<const int> sites);

  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int i) const { return sites_[i]; }
  const std::int16_t *begin() const { return sites_.data(); }
  const std::int16_t *end() const { return sites_.data() + size_; }
  bool contains(int site) const;

  // Shift every site by `offset`.
  Configuration shifted(int offset) const;

  friend auto operator<=>(const Configuration &, const Configuration &) = default;

 private:
  std::array<std::int16_t, kCapacity> sites_{};
  std::uint8_t size_ = 0;
};

/// Sparse superposition of configurations on an N-site chain. Sectors may mix.
class ExcitationState {
 public:
  using Map = std::map<Configuration, Complex>;

  explicit ExcitationState(int n_sites);

  int n_sites() const { return n_sites_; }
  const Map &amplitudes() const { return amps_; }
  bool empty() const { return amps_.empty(); }

  // Accumulates `amp` onto `config`.
  void add(const Configuration &config, Complex amp);
  Complex amplitude(const Configuration &config) const;

  double norm_squared() const;
  ExcitationState normalized() const;
  std::vector<int> sectors() const;  // distinct excitation numbers, ascending

  ExcitationState &operator*=(Complex factor);
  ExcitationState &operator+=(const ExcitationState &other);

 private:
  int n_sites_;
  Map amps_;
};

ExcitationState operator*(Complex factor, ExcitationState state);
ExcitationState operator+(ExcitationState a, const ExcitationState &b);
ExcitationState operator-(ExcitationState a, const ExcitationState &b);

// <a|b>
Complex inner_product(const ExcitationState &a, const ExcitationState &b);

// Sites carrying an excitation in any configuration, ascending.
std::vector<int> occupied_sites(const ExcitationState &state);

// Two-magnon transition amplitude: 2x2 determinant of propagator entries.
Complex two_magnon_kernel(const PropagatorMatrix &prop, int j1, int j2, int l1, int l2);

// Relative-frame evolution (vacuum amplitude is left untouched).
ExcitationState evolve_one_magnon(const ExcitationState &state, const PropagatorMatrix &prop);
ExcitationState evolve_two_magnon(const ExcitationState &state, const PropagatorMatrix &prop);

// Relative-frame amplitude of one output configuration. Needs propagator rows
// for every occupied input site.
Complex evolved_amplitude(const ExcitationState &state, const PropagatorMatrix &prop,
                          const Configuration &out);

/// Full evolution e^{-iHt} for sectors 0..2, including the global vacuum phase.
ExcitationState evolve(const ExcitationState &state, const ModeTable &modes, double t);
ExcitationState evolve(const ExcitationState &state, const ChainParams &params, double t);

}  // namespace magnon
