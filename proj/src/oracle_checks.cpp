#include "magnon/oracle_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "magnon/chain_model.hpp"
#include "magnon/encodings.hpp"
#include "magnon/errors.hpp"
#include "magnon/exact_oracle.hpp"
#include "magnon/fidelity.hpp"
#include "magnon/magnon_dynamics.hpp"

namespace magnon {

namespace {

constexpr double kTolerance = 1e-9;

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::normal_distribution<double> gauss{0.0, 1.0};

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(rng); }
  int site(int n) { return std::uniform_int_distribution<int>(1, n)(rng); }
  Complex amplitude() { return {gauss(rng), gauss(rng)}; }

  ChainParams params(int n) {
    return ChainParams{n, uniform(0.5, 1.5), 0.0, uniform(0.0, 2.0)};
  }

  ExcitationState random_state(int n, std::vector<int> sectors) {
    ExcitationState s(n);
    for (int m : sectors) {
      if (m == 0) {
        s.add(Configuration{}, amplitude());
      } else if (m == 1) {
        for (int j = 1; j <= n; ++j) s.add(Configuration{j}, amplitude());
      } else {
        for (int j = 1; j <= n; ++j) {
          for (int l = j + 1; l <= n; ++l) s.add(Configuration{j, l}, amplitude());
        }
      }
    }
    return s.normalized();
  }

  BlochState bloch() { return {std::acos(uniform(-1.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)}; }
};

double distance(const ExcitationState &a, const Eigen::VectorXcd &b) {
  return (oracle::embed(a) - b).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<OracleCheck> run_oracle_checks(int n, int trials, std::uint64_t seed) {
  if (n < 5 || n > oracle::kDefaultDimensionCap) throw ValidationError("oracle checks need 5 <= n <= 14");
  if (trials < 1) throw ValidationError("oracle checks need at least one trial");
  Sampler s{std::mt19937_64(seed)};

  double prop_dev = 0.0;
  double sector_dev[3] = {0.0, 0.0, 0.0};
  double mixed_dev = 0.0;
  double trace_dev = 0.0;
  double two_spin_dev = 0.0;
  double avg_dev = 0.0;
  double map_dev = 0.0;

  const LogicalEncoding two(EncodingName::TwoQubit);
  const LogicalEncoding singlet(EncodingName::VacuumSinglet);

  for (int trial = 0; trial < trials; ++trial) {
    const ChainParams p = s.params(n);
    const double t = s.uniform(0.0, 30.0);
    const ModeTable modes(p);
    const oracle::ExactEvolver exact(oracle::build_hamiltonian(p));

    const PropagatorMatrix prop = modes.propagator(t);
    const Complex vac = std::exp(Complex(0.0, -vacuum_energy(p) * t));
    for (int j = 1; j <= n; ++j) {
      ExcitationState one(n);
      one.add(Configuration{j}, 1.0);
      const Eigen::VectorXcd out = exact.evolve(oracle::embed(one), t);
      for (int l = 1; l <= n; ++l) {
        const auto idx = static_cast<Eigen::Index>(oracle::site_bit(n, l));
        prop_dev = std::max(prop_dev, std::abs(out(idx) - prop(j, l) * vac));
      }
    }

    for (int m = 0; m <= 2; ++m) {
      const ExcitationState psi = s.random_state(n, {m});
      sector_dev[m] = std::max(sector_dev[m], distance(evolve(psi, modes, t), exact.evolve(oracle::embed(psi), t)));
    }
    const ExcitationState mixed = s.random_state(n, {0, 1, 2});
    const ExcitationState evolved = evolve(mixed, modes, t);
    mixed_dev = std::max(mixed_dev, distance(evolved, exact.evolve(oracle::embed(mixed), t)));

    const int first = std::uniform_int_distribution<int>(1, n - 2)(s.rng);
    const std::vector<int> block{first, first + 1, first + 2};
    const ReducedBlockState sparse = reduce_to_block(evolved, block);
    const ReducedBlockState dense = oracle::partial_trace_dense(oracle::embed(evolved), n, block);
    trace_dev = std::max(trace_dev, (sparse.matrix - dense.matrix).cwiseAbs().maxCoeff());

    const BlochState b = s.bloch();
    const auto [c0, c1] = b.coefficients();
    const double direct_two = fidelity(evolve(logical_state(two, b, Placement::Start, n), modes, t),
                                       target_state(two, b, n), block_sites(two, Placement::End, n));
    two_spin_dev = std::max(two_spin_dev, std::abs(direct_two - two_spin_fidelity_closed_form(prop, c0, c1)));

    const LogicalTransferMap map = transfer_map(singlet, prop);
    avg_dev = std::max(avg_dev, std::abs(map.average_fidelity() - average_fidelity_closed_form(prop)));
    const Eigen::VectorXcd dense_out = exact.evolve(oracle::embed(logical_state(singlet, b, Placement::Start, n)), t);
    const std::vector<int> recv = block_sites(singlet, Placement::End, n);
    const double f2 = fidelity_squared(oracle::partial_trace_dense(dense_out, n, recv),
                                       block_vector(target_state(singlet, b, n), recv));
    map_dev = std::max(map_dev, std::abs(f2 - map.fidelity_squared(b)));
  }

  std::vector<OracleCheck> out;
  auto push = [&](std::string name, double dev) {
    out.push_back({std::move(name), dev, kTolerance, dev <= kTolerance});
  };
  push("propagator", prop_dev);
  push("sector-0 evolution", sector_dev[0]);
  push("sector-1 evolution", sector_dev[1]);
  push("sector-2 evolution", sector_dev[2]);
  push("mixed-sector evolution", mixed_dev);
  push("block partial trace", trace_dev);
  push("two-spin closed form", two_spin_dev);
  push("vacuum-singlet average closed form", avg_dev);
  push("transfer map vs dense fidelity", map_dev);
  return out;
}

}  // namespace magnon
