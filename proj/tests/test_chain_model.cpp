#include <cmath>
#include <numbers>

#include "doctest.h"
#include "magnon/chain_model.hpp"
#include "magnon/errors.hpp"
#include "magnon/exact_oracle.hpp"

using namespace magnon;

TEST_SUITE("chain_model") {

TEST_CASE("mode energies") {
  const auto three = magnon_modes({3, 1.0, 0.0, 1.0});
  REQUIRE(three.size() == 3);
  CHECK(three[1].index == 2);
  CHECK(three[1].momentum == doctest::Approx(std::numbers::pi / 2));
  CHECK(std::abs(three[1].energy - 2.0) < 1e-15);

  const auto one = magnon_modes({1, 1.0, 0.0, 1.0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].momentum == doctest::Approx(std::numbers::pi / 2));
  CHECK(std::abs(one[0].energy - 2.0) < 1e-15);
}

TEST_CASE("N=4 spectrum matches the single-excitation block of the dense Hamiltonian") {
  const ChainParams p{4, 1.0, 0.0, 1.0};
  const auto modes = magnon_modes(p);
  CHECK(std::abs(modes[0].energy - (2.0 - 2.0 * std::cos(std::numbers::pi / 5))) < 1e-14);

  const auto h = oracle::build_hamiltonian(p);
  Eigen::MatrixXd block(4, 4);
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      block(a - 1, b - 1) = h.matrix(oracle::site_bit(4, a), oracle::site_bit(4, b));
    }
  }
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block).eigenvalues();
  const double vac = h.matrix(0, 0);
  CHECK(std::abs(vac - vacuum_energy(p)) < 1e-14);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(ev(m) - vac - modes[m].energy) < 1e-12);
}

TEST_CASE("propagator at t=0 is the identity") {
  for (int n : {1, 2, 7, 30}) {
    const auto f = propagator({n, 1.0, 0.0, 1.0}, 0.0).dense();
    CHECK((f - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("N=1 propagator is a pure field phase") {
  for (double t : {0.3, 2.0, 17.5}) {
    const double h = 0.7;
    const Complex f = propagator({1, 1.0, 0.0, h}, t)(1, 1);
    CHECK(std::abs(f - std::exp(Complex(0.0, -2.0 * h * t))) < 1e-14);
  }
}

TEST_CASE("propagator invariants") {
  for (int n : {5, 10, 48}) {
    for (double t : {0.0, 3.3, 25.0, 100.0}) {
      const ChainParams p{n, 1.0, 0.0, 0.4};
      const auto f = propagator(p, t).dense();
      for (int j = 0; j < n; ++j) CHECK(std::abs(f.row(j).squaredNorm() - 1.0) < 1e-12);
      CHECK((f - f.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((f - f.reverse()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("composition f(t1) f(t2) = f(t1 + t2)") {
  const ChainParams p{20, 1.2, 0.0, 0.3};
  const auto a = propagator(p, 4.1).dense();
  const auto b = propagator(p, 7.3).dense();
  const auto ab = propagator(p, 11.4).dense();
  CHECK(((a * b) - ab).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("field only adds a global phase in the one-magnon sector") {
  const ChainParams p0{12, 1.0, 0.0, 0.0};
  const ChainParams p2{12, 1.0, 0.0, 2.0};
  const double t = 6.25;
  const auto f0 = propagator(p0, t);
  const auto f2 = propagator(p2, t).dense();
  CHECK((f0.field_shifted(2.0).dense() - f2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((f0.dense().cwiseAbs() - f2.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("N=6 entry f_{1,6}(5) matches the dense oracle") {
  const ChainParams p{6, 1.0, 0.0, 1.0};
  const double t = 5.0;
  const oracle::ExactEvolver ev(oracle::build_hamiltonian(p));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(64);
  psi(oracle::site_bit(6, 1)) = 1.0;
  const Eigen::VectorXcd out = ev.evolve(psi, t);
  const Complex vac_phase = std::exp(Complex(0.0, -vacuum_energy(p) * t));
  CHECK(std::abs(out(oracle::site_bit(6, 6)) - propagator(p, t)(1, 6) * vac_phase) < 1e-10);
}

TEST_CASE("sub-block propagators agree with the full matrix") {
  const ChainParams p{15, 1.0, 0.0, 1.0};
  const ModeTable modes(p);
  const auto full = modes.propagator(9.0);
  const std::vector<int> rows{1, 3}, cols{13, 14, 15};
  const auto part = modes.propagator(9.0, rows, cols);
  for (int j : rows) {
    for (int l : cols) CHECK(std::abs(part(j, l) - full(j, l)) < 1e-14);
  }
  CHECK(std::abs(modes.entry(2, 11, 9.0) - full(2, 11)) < 1e-14);
  CHECK_THROWS_AS((void)part(5, 6), ValidationError);
  CHECK_THROWS_AS((void)part.dense(), ValidationError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ChainParams({0, 1.0, 0.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(ChainParams({4, std::nan(""), 0.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS((void)propagator({4, 1.0, 0.0, 1.0}, std::numeric_limits<double>::infinity()), ValidationError);
}

}
