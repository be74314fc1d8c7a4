#include <cmath>
#include <numbers>

#include "doctest.h"
#include "magnon/encodings.hpp"
#include "magnon/errors.hpp"

using namespace magnon;

namespace {

const double r2 = std::sqrt(2.0);

double gap(const ExcitationState &a, const ExcitationState &b) {
  double worst = 0.0;
  for (const auto &[c, x] : a.amplitudes()) worst = std::max(worst, std::abs(x - b.amplitude(c)));
  for (const auto &[c, x] : b.amplitudes()) worst = std::max(worst, std::abs(x - a.amplitude(c)));
  return worst;
}

ExcitationState sites(int n, std::initializer_list<std::pair<Configuration, Complex>> amps) {
  ExcitationState s(n);
  for (const auto &[c, a] : amps) s.add(c, a);
  return s;
}

}  // namespace

TEST_SUITE("encodings") {

TEST_CASE("names round-trip") {
  for (auto e : all_encodings()) CHECK(parse_encoding(to_string(e)) == e);
  CHECK(parse_encoding("vacuum-singlet") == EncodingName::VacuumSinglet);
  CHECK_THROWS_AS(parse_encoding("five-qubit"), ValidationError);
}

TEST_CASE("block sizes") {
  CHECK(LogicalEncoding(EncodingName::TwoQubit).block_size() == 2);
  CHECK(LogicalEncoding(EncodingName::ThreeQubit1).block_size() == 3);
  CHECK(LogicalEncoding(EncodingName::ThreeQubit2).block_size() == 3);
  CHECK(LogicalEncoding(EncodingName::FourQubit).block_size() == 4);
  CHECK(LogicalEncoding(EncodingName::VacuumSinglet).block_size() == 3);
  CHECK(LogicalEncoding(EncodingName::SingleSpin).block_size() == 1);
}

TEST_CASE("logical bases are orthonormal for every encoding and several gauges") {
  std::vector<LogicalEncoding> encs;
  for (auto e : all_encodings()) encs.emplace_back(e);
  const Complex i(0.0, 1.0);
  encs.emplace_back(EncodingName::ThreeQubit1, Gauge{0.6, 0.8 * i, 1.0 / r2, -1.0 / r2});
  encs.emplace_back(EncodingName::ThreeQubit2, Gauge{0.0, 1.0, 0.8, 0.6});
  for (const auto &enc : encs) {
    const auto zero = logical_basis_state(enc, 0, Placement::Start, 8);
    const auto one = logical_basis_state(enc, 1, Placement::Start, 8);
    CHECK(std::abs(inner_product(zero, zero) - 1.0) < 1e-12);
    CHECK(std::abs(inner_product(one, one) - 1.0) < 1e-12);
    CHECK(std::abs(inner_product(zero, one)) < 1e-12);
  }
  CHECK_THROWS_AS(LogicalEncoding(EncodingName::ThreeQubit1, Gauge{1.0, 1.0, 1.0, 0.0}), ValidationError);
}

TEST_CASE("excitation content per encoding") {
  auto sectors = [](EncodingName e) {
    const LogicalEncoding enc(e);
    return (logical_basis_state(enc, 0, Placement::Start, 6) + logical_basis_state(enc, 1, Placement::Start, 6))
        .sectors();
  };
  CHECK(sectors(EncodingName::TwoQubit) == std::vector<int>{1});
  CHECK(sectors(EncodingName::ThreeQubit1) == std::vector<int>{1});
  CHECK(sectors(EncodingName::ThreeQubit2) == std::vector<int>{2});
  CHECK(sectors(EncodingName::FourQubit) == std::vector<int>{2});
  CHECK(sectors(EncodingName::VacuumSinglet) == std::vector<int>{0, 1});
}

TEST_CASE("two-qubit equal superposition") {
  const LogicalEncoding enc(EncodingName::TwoQubit);
  const auto s = logical_state(enc, {std::numbers::pi / 2, 0.0}, Placement::Start, 4);
  CHECK(gap(s, sites(4, {{{2}, 1.0 / r2}, {{1}, 1.0 / r2}})) < 1e-15);
  const auto t = target_state(enc, {std::numbers::pi / 2, 0.0}, 4);
  CHECK(gap(t, sites(4, {{{4}, 1.0 / r2}, {{3}, 1.0 / r2}})) < 1e-15);
}

TEST_CASE("vacuum-singlet |1_L> at both ends of N=48") {
  const LogicalEncoding enc(EncodingName::VacuumSinglet);
  const BlochState one{std::numbers::pi, 0.0};
  CHECK(gap(logical_state(enc, one, Placement::Start, 48), sites(48, {{{3}, 1.0 / r2}, {{1}, -1.0 / r2}})) < 1e-15);
  CHECK(gap(target_state(enc, one, 48), sites(48, {{{48}, 1.0 / r2}, {{46}, -1.0 / r2}})) < 1e-15);
}

TEST_CASE("three-qubit-1 at theta = 2pi/3 is the site-1,3 singlet") {
  const LogicalEncoding enc(EncodingName::ThreeQubit1);
  const auto s = logical_state(enc, {2.0 * std::numbers::pi / 3.0, 0.0}, Placement::Start, 10);
  CHECK(gap(s, sites(10, {{{3}, 1.0 / r2}, {{1}, -1.0 / r2}})) < 1e-12);
}

TEST_CASE("four-qubit |0_L> on the last block of N=8") {
  const LogicalEncoding enc(EncodingName::FourQubit);
  const auto z = logical_basis_state(enc, 0, Placement::End, 8);
  CHECK(gap(z, sites(8, {{{6, 8}, 0.5}, {{5, 7}, 0.5}, {{6, 7}, -0.5}, {{5, 8}, -0.5}})) < 1e-15);
  CHECK(block_sites(enc, Placement::End, 8) == std::vector<int>{5, 6, 7, 8});
}

TEST_CASE("end placement is a translation of the start block") {
  for (auto e : all_encodings()) {
    const LogicalEncoding enc(e);
    const int n = 11, b = enc.block_size();
    for (int bit : {0, 1}) {
      const auto start = logical_basis_state(enc, bit, Placement::Start, n);
      const auto end = logical_basis_state(enc, bit, Placement::End, n);
      ExcitationState moved(n);
      for (const auto &[c, a] : start.amplitudes()) moved.add(c.shifted(n - b), a);
      CHECK(gap(moved, end) < 1e-15);
    }
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(logical_state(LogicalEncoding(EncodingName::FourQubit), {}, Placement::Start, 3), ChainTooShortError);
  CHECK_THROWS_AS(BlochState({4.0, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS(BlochState({1.0, -0.1}).validate(), ValidationError);
}

}
