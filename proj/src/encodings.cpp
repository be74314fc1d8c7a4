#include "magnon/encodings.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "magnon/errors.hpp"

namespace magnon {

namespace {

// "0110" -> Configuration{2, 3}
Configuration from_bits(std::string_view bits) {
  std::vector<int> sites;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') sites.push_back(static_cast<int>(i) + 1);
  }
  return Configuration(std::span<const int>(sites));
}

BlockVector make(std::initializer_list<std::pair<const char *, double>> terms, Complex scale = 1.0) {
  BlockVector v;
  for (const auto &[bits, w] : terms) v.emplace_back(from_bits(bits), scale * w);
  return v;
}

void append(BlockVector &dst, const BlockVector &src, Complex scale) {
  if (scale == 0.0) return;
  for (const auto &[c, a] : src) dst.emplace_back(c, scale * a);
}

void check_gauge(const Gauge &g) {
  const double n0 = std::norm(g.alpha0) + std::norm(g.beta0);
  const double n1 = std::norm(g.alpha1) + std::norm(g.beta1);
  if (std::abs(n0 - 1.0) > 1e-12 || std::abs(n1 - 1.0) > 1e-12) {
    throw ValidationError("three-qubit gauge pairs must be normalised");
  }
}

}  // namespace

std::string_view to_string(EncodingName name) {
  switch (name) {
    case EncodingName::TwoQubit: return "two-qubit";
    case EncodingName::ThreeQubit1: return "three-qubit-1";
    case EncodingName::ThreeQubit2: return "three-qubit-2";
    case EncodingName::FourQubit: return "four-qubit";
    case EncodingName::VacuumSinglet: return "vacuum-singlet";
    case EncodingName::SingleSpin: return "single-spin";
  }
  return "unknown";
}

std::vector<EncodingName> all_encodings() {
  return {EncodingName::TwoQubit,   EncodingName::ThreeQubit1,   EncodingName::ThreeQubit2,
          EncodingName::FourQubit,  EncodingName::VacuumSinglet, EncodingName::SingleSpin};
}

EncodingName parse_encoding(std::string_view text) {
  for (EncodingName e : all_encodings()) {
    if (to_string(e) == text) return e;
  }
  throw ValidationError("unknown encoding '" + std::string(text) +
                        "' (expected two-qubit | three-qubit-1 | three-qubit-2 | four-qubit | "
                        "vacuum-singlet | single-spin)");
}

LogicalEncoding::LogicalEncoding(EncodingName name)
    : LogicalEncoding(name, name == EncodingName::ThreeQubit2 ? Gauge{0.0, 1.0, 0.0, 1.0} : Gauge{}) {}

LogicalEncoding::LogicalEncoding(EncodingName name, Gauge gauge) : name_(name) {
  const double r2 = std::numbers::sqrt2;
  const double r6 = std::sqrt(6.0);
  const double r12 = std::sqrt(12.0);
  switch (name) {
    case EncodingName::TwoQubit:
      block_size_ = 2;
      basis_ = {make({{"01", 1.0}}), make({{"10", 1.0}})};
      break;
    case EncodingName::ThreeQubit1:
    case EncodingName::ThreeQubit2: {
      check_gauge(gauge);
      block_size_ = 3;
      gauge_ = gauge;
      const BlockVector zero_a = make({{"010", 1.0}, {"100", -1.0}}, 1.0 / r2);
      const BlockVector zero_b = make({{"011", 1.0}, {"101", -1.0}}, 1.0 / r2);
      const BlockVector one_a = make({{"001", 2.0}, {"010", -1.0}, {"100", -1.0}}, 1.0 / r6);
      const BlockVector one_b = make({{"110", -2.0}, {"011", 1.0}, {"101", 1.0}}, 1.0 / r6);
      BlockVector zero, one;
      append(zero, zero_a, gauge.alpha0);
      append(zero, zero_b, gauge.beta0);
      append(one, one_a, gauge.alpha1);
      append(one, one_b, gauge.beta1);
      basis_ = {zero, one};
      break;
    }
    case EncodingName::FourQubit:
      block_size_ = 4;
      basis_ = {make({{"0101", 1.0}, {"1010", 1.0}, {"0110", -1.0}, {"1001", -1.0}}, 0.5),
                make({{"0011", 2.0},
                      {"1100", 2.0},
                      {"0110", -1.0},
                      {"1001", -1.0},
                      {"0101", -1.0},
                      {"1010", -1.0}},
                     1.0 / r12)};
      break;
    case EncodingName::VacuumSinglet:
      block_size_ = 3;
      basis_ = {make({{"000", 1.0}}), make({{"001", 1.0}, {"100", -1.0}}, 1.0 / r2)};
      break;
    case EncodingName::SingleSpin:
      block_size_ = 1;
      basis_ = {make({{"0", 1.0}}), make({{"1", 1.0}})};
      break;
  }
}

void BlochState::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi + 1e-12)) {
    throw ValidationError("theta must lie in [0, pi]");
  }
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi + 1e-12)) {
    throw ValidationError("phi must lie in [0, 2 pi)");
  }
}

std::pair<Complex, Complex> BlochState::coefficients() const {
  return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
}

std::vector<int> block_sites(const LogicalEncoding &enc, Placement placement, int n_sites) {
  const int b = enc.block_size();
  if (n_sites < b) {
    throw ChainTooShortError("chain of " + std::to_string(n_sites) + " sites is shorter than the " +
                             std::string(to_string(enc.name())) + " block (" + std::to_string(b) +
                             ")");
  }
  const int first = placement == Placement::Start ? 1 : n_sites - b + 1;
  std::vector<int> sites(b);
  for (int i = 0; i < b; ++i) sites[i] = first + i;
  return sites;
}

ExcitationState logical_basis_state(const LogicalEncoding &enc, int bit, Placement placement,
                                    int n_sites) {
  const int offset = block_sites(enc, placement, n_sites).front() - 1;
  ExcitationState out(n_sites);
  for (const auto &[c, a] : enc.basis(bit)) out.add(c.shifted(offset), a);
  return out;
}

ExcitationState logical_state(const LogicalEncoding &enc, const BlochState &bloch,
                              Placement placement, int n_sites) {
  bloch.validate();
  const auto [c0, c1] = bloch.coefficients();
  ExcitationState out(n_sites);
  if (c0 != 0.0) out += c0 * logical_basis_state(enc, 0, placement, n_sites);
  if (c1 != 0.0) out += c1 * logical_basis_state(enc, 1, placement, n_sites);
  return out;
}

ExcitationState logical_state_at(const LogicalEncoding &enc, const BlochState &bloch, int first_site,
                                 int n_sites) {
  bloch.validate();
  if (first_site < 1 || first_site + enc.block_size() - 1 > n_sites) {
    throw ChainTooShortError("logical block does not fit on the chain");
  }
  const auto [c0, c1] = bloch.coefficients();
  ExcitationState out(n_sites);
  for (const auto &[c, a] : enc.basis(0)) {
    if (c0 != 0.0) out.add(c.shifted(first_site - 1), c0 * a);
  }
  for (const auto &[c, a] : enc.basis(1)) {
    if (c1 != 0.0) out.add(c.shifted(first_site - 1), c1 * a);
  }
  return out;
}

ExcitationState target_state(const LogicalEncoding &enc, const BlochState &bloch, int n_sites) {
  return logical_state(enc, bloch, Placement::End, n_sites);
}

}  // namespace magnon
