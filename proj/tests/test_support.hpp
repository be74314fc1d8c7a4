#pragma once

#include <cmath>
#include <random>

#include "magnon/magnon_dynamics.hpp"

namespace magnon::test {

inline ExcitationState random_state(int n, std::initializer_list<int> sectors, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  ExcitationState s(n);
  for (int m : sectors) {
    if (m == 0) s.add(Configuration{}, {g(rng), g(rng)});
    if (m == 1) {
      for (int j = 1; j <= n; ++j) s.add(Configuration{j}, {g(rng), g(rng)});
    }
    if (m == 2) {
      for (int j = 1; j <= n; ++j) {
        for (int l = j + 1; l <= n; ++l) s.add(Configuration{j, l}, {g(rng), g(rng)});
      }
    }
  }
  return s.normalized();
}

inline double max_abs(const Eigen::MatrixXcd &m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace magnon::test
