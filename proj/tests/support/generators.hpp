// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "darkcat/dark_states.hpp"
#include "darkcat/types.hpp"

namespace darkcat::testing {

/// Seeded source of random physics inputs for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  cplx complex_normal() { return {normal(), normal()}; }

  ScsAngles angles() { return {std::acos(uniform(-1.0, 1.0)), uniform(0.0, 2.0 * kPi)}; }

  SphericalRabi drive() { return {complex_normal(), complex_normal(), complex_normal()}; }

  CMatrix hermitian(int n) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = complex_normal();
    return 0.5 * (a + a.adjoint());
  }

  CMatrix matrix(int n) {
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = complex_normal();
    return a;
  }

  CMatrix density(int n) {
    const CMatrix a = matrix(n);
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
  }

 private:
  std::mt19937_64 rng_;
};

/// Spins 1/2, 1, ..., max_twice/2.
inline std::vector<HalfInt> spins_up_to(int max_twice, int min_twice = 1) {
  std::vector<HalfInt> out;
  for (int t = min_twice; t <= max_twice; ++t) out.push_back(half(t));
  return out;
}

}  // namespace darkcat::testing
