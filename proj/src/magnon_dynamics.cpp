#include "magnon/magnon_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "magnon/errors.hpp"

namespace magnon {

Configuration::Configuration(std::initializer_list<int> sites)
    : Configuration(std::span<const int>(sites.begin(), sites.size())) {}

Configuration::Configuration(std::span<const int> sites) {
  if (sites.size() > static_cast<std::size_t>(kCapacity)) {
    throw UnsupportedSectorError("configuration holds at most " + std::to_string(kCapacity) +
                                 " excitations");
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 1) throw ValidationError("configuration sites are 1-based");
    if (i > 0 && sites[i] <= sites[i - 1]) {
      throw ValidationError("configuration sites must be strictly ascending");
    }
    sites_[i] = static_cast<std::int16_t>(sites[i]);
  }
  size_ = static_cast<std::uint8_t>(sites.size());
}

bool Configuration::contains(int site) const {
  return std::find(begin(), end(), site) != end();
}

Configuration Configuration::shifted(int offset) const {
  std::array<int, kCapacity> s{};
  for (int i = 0; i < size_; ++i) s[i] = sites_[i] + offset;
  return Configuration(std::span<const int>(s.data(), size_));
}

ExcitationState::ExcitationState(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1) throw ValidationError("ExcitationState needs n_sites >= 1");
}

void ExcitationState::add(const Configuration &config, Complex amp) {
  if (config.size() > 0 && config[config.size() - 1] > n_sites_) {
    throw ValidationError("configuration site beyond chain end");
  }
  amps_[config] += amp;
}

Complex ExcitationState::amplitude(const Configuration &config) const {
  const auto it = amps_.find(config);
  return it == amps_.end() ? Complex{} : it->second;
}

double ExcitationState::norm_squared() const {
  double acc = 0.0;
  for (const auto &[c, a] : amps_) acc += std::norm(a);
  return acc;
}

ExcitationState ExcitationState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw ValidationError("cannot normalise a zero state");
  ExcitationState out = *this;
  out *= 1.0 / n;
  return out;
}

std::vector<int> ExcitationState::sectors() const {
  std::set<int> s;
  for (const auto &[c, a] : amps_) s.insert(c.size());
  return {s.begin(), s.end()};
}

ExcitationState &ExcitationState::operator*=(Complex factor) {
  for (auto &[c, a] : amps_) a *= factor;
  return *this;
}

ExcitationState &ExcitationState::operator+=(const ExcitationState &other) {
  if (other.n_sites_ != n_sites_) throw ValidationError("states live on different chains");
  for (const auto &[c, a] : other.amps_) amps_[c] += a;
  return *this;
}

ExcitationState operator*(Complex factor, ExcitationState state) {
  state *= factor;
  return state;
}

ExcitationState operator+(ExcitationState a, const ExcitationState &b) {
  a += b;
  return a;
}

ExcitationState operator-(ExcitationState a, const ExcitationState &b) {
  a += -1.0 * b;
  return a;
}

Complex inner_product(const ExcitationState &a, const ExcitationState &b) {
  if (a.n_sites() != b.n_sites()) throw ValidationError("states live on different chains");
  Complex acc = 0.0;
  for (const auto &[c, amp] : a.amplitudes()) acc += std::conj(amp) * b.amplitude(c);
  return acc;
}

std::vector<int> occupied_sites(const ExcitationState &state) {
  std::set<int> s;
  for (const auto &[c, a] : state.amplitudes()) s.insert(c.begin(), c.end());
  return {s.begin(), s.end()};
}

Complex two_magnon_kernel(const PropagatorMatrix &prop, int j1, int j2, int l1, int l2) {
  return prop(j1, l1) * prop(j2, l2) - prop(j1, l2) * prop(j2, l1);
}

namespace {

void require_sectors(const ExcitationState &state, int lo, int hi, const char *what) {
  for (const auto &[c, a] : state.amplitudes()) {
    if (c.size() < lo || c.size() > hi) throw MixedSectorError(what);
  }
}

void check_chain(const ExcitationState &state, const PropagatorMatrix &prop) {
  if (state.n_sites() != prop.n_sites()) {
    throw ValidationError("state and propagator have different chain lengths");
  }
}

}  // namespace

ExcitationState evolve_one_magnon(const ExcitationState &state, const PropagatorMatrix &prop) {
  check_chain(state, prop);
  require_sectors(state, 0, 1, "evolve_one_magnon requires configurations with M <= 1");
  const int n = state.n_sites();
  ExcitationState out(n);
  std::vector<std::pair<int, Complex>> sources;
  for (const auto &[c, a] : state.amplitudes()) {
    if (c.empty()) {
      out.add(c, a);
    } else {
      sources.emplace_back(c[0], a);
    }
  }
  if (sources.empty()) return out;
  for (int l = 1; l <= n; ++l) {
    Complex acc = 0.0;
    for (const auto &[j, a] : sources) acc += prop(j, l) * a;
    if (acc != 0.0) out.add(Configuration{l}, acc);
  }
  return out;
}

ExcitationState evolve_two_magnon(const ExcitationState &state, const PropagatorMatrix &prop) {
  check_chain(state, prop);
  require_sectors(state, 2, 2, "evolve_two_magnon requires configurations with M == 2");
  const int n = state.n_sites();
  ExcitationState out(n);
  if (state.empty()) return out;
  std::vector<int> src_sites = occupied_sites(state);
  // Cache the needed rows once: row[s][l] = f_{s,l}.
  std::vector<std::vector<Complex>> row(n + 1);
  for (int s : src_sites) {
    row[s].resize(n + 1);
    for (int l = 1; l <= n; ++l) row[s][l] = prop(s, l);
  }
  for (int l1 = 1; l1 <= n; ++l1) {
    for (int l2 = l1 + 1; l2 <= n; ++l2) {
      Complex acc = 0.0;
      for (const auto &[c, a] : state.amplitudes()) {
        const int j1 = c[0];
        const int j2 = c[1];
        acc += (row[j1][l1] * row[j2][l2] - row[j1][l2] * row[j2][l1]) * a;
      }
      if (acc != 0.0) out.add(Configuration{l1, l2}, acc);
    }
  }
  return out;
}

Complex evolved_amplitude(const ExcitationState &state, const PropagatorMatrix &prop,
                          const Configuration &out) {
  check_chain(state, prop);
  Complex acc = 0.0;
  for (const auto &[c, a] : state.amplitudes()) {
    if (c.size() != out.size()) continue;
    switch (c.size()) {
      case 0:
        acc += a;
        break;
      case 1:
        acc += prop(c[0], out[0]) * a;
        break;
      case 2:
        acc += two_magnon_kernel(prop, c[0], c[1], out[0], out[1]) * a;
        break;
      default:
        throw UnsupportedSectorError("analytic evolution supports at most two magnons");
    }
  }
  return acc;
}

ExcitationState evolve(const ExcitationState &state, const ModeTable &modes, double t) {
  if (state.n_sites() != modes.n_sites()) {
    throw ValidationError("state and mode table have different chain lengths");
  }
  ExcitationState low(state.n_sites());
  ExcitationState two(state.n_sites());
  for (const auto &[c, a] : state.amplitudes()) {
    if (c.size() > 2) throw UnsupportedSectorError("analytic evolution supports at most two magnons");
    (c.size() == 2 ? two : low).add(c, a);
  }
  const std::vector<int> rows = occupied_sites(state);
  ExcitationState out(state.n_sites());
  if (!rows.empty()) {
    const PropagatorMatrix prop = modes.propagator(t, rows);
    out = evolve_one_magnon(low, prop);
    if (!two.empty()) out += evolve_two_magnon(two, prop);
  } else {
    out = low;
  }
  out *= std::polar(1.0, -vacuum_energy(modes.params()) * t);
  return out;
}

ExcitationState evolve(const ExcitationState &state, const ChainParams &params, double t) {
  return evolve(state, ModeTable(params), t);
}

}  // namespace magnon
