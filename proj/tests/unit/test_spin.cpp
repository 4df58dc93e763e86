// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "darkcat/spin.hpp"
#include "support/generators.hpp"
#include "support/racah.hpp"

namespace darkcat {
namespace {

using testing::Gen;
using testing::spins_up_to;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(SpinOperators, SpinHalfIsHalfPauli) {
  const SpinOps s = spin_operators(half(1));
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  EXPECT_LT(max_abs(s.fx - 0.5 * sx), 1e-15);
  EXPECT_LT(max_abs(s.fy - 0.5 * sy), 1e-15);
  EXPECT_LT(max_abs(s.fz - 0.5 * sz), 1e-15);
}

TEST(SpinOperators, SpinOneFzIsDiagonal) {
  const SpinOps s = spin_operators(whole(1));
  EXPECT_LT(max_abs(s.fz - RVector::LinSpaced(3, 1.0, -1.0).cast<cplx>().asDiagonal().toDenseMatrix()), 0.0 + 1e-300);
}

TEST(SpinOperators, CasimirAndCommutators) {
  for (HalfInt F : spins_up_to(15, 0)) {
    const SpinOps s = spin_operators(F);
    const int d = F.dim();
    const double f = F.value();
    const CMatrix id = CMatrix::Identity(d, d);
    EXPECT_LT(max_abs(s.fx * s.fx + s.fy * s.fy + s.fz * s.fz - f * (f + 1) * id), 1e-11) << F.str();
    EXPECT_LT(max_abs(s.fx * s.fy - s.fy * s.fx - kI * s.fz), 1e-12) << F.str();
    EXPECT_LT(max_abs(s.fy * s.fz - s.fz * s.fy - kI * s.fx), 1e-12) << F.str();
    EXPECT_LT(max_abs(s.fz * s.fx - s.fx * s.fz - kI * s.fy), 1e-12) << F.str();
    EXPECT_LT(max_abs(s.fplus - (s.fx + kI * s.fy)), 1e-14);
    EXPECT_LT(max_abs(s.fx - s.fx.adjoint()), 1e-15);
    EXPECT_LT(max_abs(s.fy - s.fy.adjoint()), 1e-15);
  }
}

TEST(ClebschGordan, MatchesRacahOracle) {
  for (HalfInt F1 : spins_up_to(15, 0)) {
    for (int dj = -2; dj <= 2; dj += 2) {
      const HalfInt F2 = HalfInt::from_twice(F1.twice() + dj);
      if (F2.twice() < 0) continue;
      for (int i = 0; i < F1.dim(); ++i) {
        const HalfInt m1 = basis_m(F1, i);
        for (int q = -1; q <= 1; ++q) {
          const HalfInt m2 = m1 + whole(q);
          const double expect = testing::racah_cg(F1.twice(), m1.twice(), 2, 2 * q, F2.twice(), m2.twice());
          EXPECT_NEAR(clebsch_gordan(F1, m1, q, F2, m2), expect, 1e-14)
              << F1.str() << " " << m1.str() << " " << q << " " << F2.str();
        }
      }
    }
  }
}

TEST(ClebschGordan, StretchedGroundStateHasNoPiPartner) {
  for (int fg = 1; fg <= 6; ++fg) {
    EXPECT_EQ(clebsch_gordan(whole(fg), whole(fg), 0, whole(fg - 1), whole(fg)), 0.0);
  }
}

TEST(ClebschGordan, SpinOneToSinglet) {
  EXPECT_NEAR(clebsch_gordan(whole(1), whole(1), -1, whole(0), whole(0)), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(testing::racah_cg(2, 2, 2, -2, 0, 0), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(ClebschGordan, CoupledStatesAreNormalized) {
  for (HalfInt F1 : spins_up_to(12, 1)) {
    for (int dj = -2; dj <= 2; dj += 2) {
      const HalfInt F2 = HalfInt::from_twice(F1.twice() + dj);
      for (int j = 0; j < F2.dim(); ++j) {
        const HalfInt m2 = basis_m(F2, j);
        double sum = 0.0;
        for (int q = -1; q <= 1; ++q) {
          const HalfInt m1 = m2 - whole(q);
          if (std::abs(m1.twice()) > F1.twice()) continue;
          sum += std::pow(clebsch_gordan(F1, m1, q, F2, m2), 2);
        }
        EXPECT_NEAR(sum, 1.0, 1e-13);
      }
    }
  }
}

TEST(ClebschGordan, RejectsOutOfRangeProjection) {
  EXPECT_THROW(clebsch_gordan(whole(1), whole(2), 0, whole(1), whole(2)), InvalidArgument);
}

TEST(Rotation, IdentityAndGroupProperty) {
  Gen gen(11);
  for (HalfInt F : spins_up_to(12, 1)) {
    const int d = F.dim();
    EXPECT_LT(max_abs(rotation_operator(0, 0, 0, F) - CMatrix::Identity(d, d)), 1e-14);
    const double b1 = gen.uniform(-3, 3), b2 = gen.uniform(-3, 3);
    EXPECT_LT(max_abs(rotation_operator(0, b1, 0, F) * rotation_operator(0, b2, 0, F) -
                      rotation_operator(0, b1 + b2, 0, F)),
              1e-12);
  }
}

TEST(Rotation, SpinOneSmallWignerD) {
  const double b = 0.731;
  const double c = std::cos(b), s = std::sin(b), r = std::sqrt(2.0);
  RMatrix d(3, 3);
  d << (1 + c) / 2, -s / r, (1 - c) / 2,
       s / r, c, -s / r,
       (1 - c) / 2, s / r, (1 + c) / 2;
  EXPECT_LT(max_abs(rotation_operator(0, b, 0, whole(1)) - d.cast<cplx>()), 1e-14);
}

TEST(Rotation, Unitary) {
  Gen gen(12);
  for (HalfInt F : spins_up_to(15, 1)) {
    const int d = F.dim();
    for (int k = 0; k < 100; ++k) {
      const CMatrix r = rotation_operator(gen.uniform(-7, 7), gen.uniform(-7, 7), gen.uniform(-7, 7), F);
      ASSERT_LT(max_abs(r.adjoint() * r - CMatrix::Identity(d, d)), 1e-11);
    }
  }
}

TEST(CoherentState, NorthPoleAndEquator) {
  for (HalfInt F : spins_up_to(12, 1)) {
    EXPECT_LT((spin_coherent_state({0, 0}, F) - basis_state(F, F)).norm(), 1e-14);
    const CVector zero = spin_coherent_state({kPi / 2, 0}, F);
    const SpinOps s = spin_operators(F);
    // +x stretched state: Fx eigenvalue F.
    EXPECT_LT((s.fx * zero - F.value() * zero).norm(), 1e-12);
    EXPECT_LT((zero - x_basis_state(F, F)).norm(), 1e-14);
  }
}

TEST(CoherentState, OverlapLaw) {
  Gen gen(13);
  for (HalfInt F : spins_up_to(12, 1)) {
    for (int k = 0; k < 50; ++k) {
      const ScsAngles a = gen.angles(), b = gen.angles();
      const double overlap = std::abs(spin_coherent_state(a, F).dot(spin_coherent_state(b, F)));
      EXPECT_NEAR(overlap, std::pow(std::cos(0.5 * bloch_angle(a, b)), F.twice()), 1e-10);
    }
  }
}

TEST(CoherentState, FzPowerMatchesRepeatedProducts) {
  Gen gen(14);
  for (HalfInt F : spins_up_to(10, 1)) {
    const CMatrix fz = spin_operators(F).fz;
    for (int nz = 0; nz <= 4; ++nz) {
      const ScsAngles a = gen.angles(), b = gen.angles();
      CMatrix m = CMatrix::Identity(F.dim(), F.dim());
      for (int k = 0; k < nz; ++k) m = m * fz;
      const cplx brute = spin_coherent_state(a, F).dot(m * spin_coherent_state(b, F));
      EXPECT_LT(std::abs(scs_fz_power_element(nz, a, b, F) - brute), 1e-12 * std::max(1.0, std::abs(brute)));
    }
  }
}

TEST(CoherentState, AntipodalOffDiagonalVanishesBelowTwoF) {
  Gen gen(15);
  for (int tf = 2; tf <= 12; ++tf) {
    const HalfInt F = half(tf);
    const ScsAngles a = gen.angles();
    const ScsAngles b{kPi - a.theta, a.phi + kPi};
    for (int nz = 0; nz < tf; ++nz) {
      EXPECT_LT(std::abs(scs_fz_power_element(nz, a, b, F)), 1e-11 * std::pow(F.value(), nz));
    }
  }
}

TEST(CoherentState, EquatorialDiagonalDifferentialVanishes) {
  for (int tf = 2; tf <= 10; ++tf) {
    for (int nz = 0; nz <= 5; ++nz) {
      EXPECT_NEAR(scs_diag_differential(nz, {kPi / 2, 0.4}, {kPi / 2, 0.4 + kPi}, half(tf)), 0.0, 1e-10);
      EXPECT_NEAR(scs_diag_differential_asymptotic(nz, half(tf), kPi / 2), 0.0, 1e-12);
    }
  }
}

// Ratios are only checked where the element sits well above double roundoff.
TEST(CoherentState, OffDiagonalAsymptoticRatio) {
  const double eps = 1e-2;
  int checked = 0;
  for (int tf = 1; tf <= 8; ++tf) {
    const HalfInt F = half(tf);
    for (double theta1 : {0.6, kPi / 2, 2.2}) {
      for (int nz = 0; nz < tf; ++nz) {
        const ScsAngles a{theta1, 0.3};
        const ScsAngles polar{kPi - theta1 + eps, 0.3 + kPi};
        const ScsAngles azim{kPi - theta1, 0.3 + kPi + eps};
        const double pp = scs_offdiag_asymptotic(nz, F, theta1, eps, ScsOffset::kPolar);
        const double pa = scs_offdiag_asymptotic(nz, F, theta1, eps, ScsOffset::kAzimuthal);
        if (pp > 1e-9) {
          EXPECT_NEAR(std::abs(scs_fz_power_element(nz, a, polar, F)) / pp, 1.0, 0.05)
              << "F=" << F.str() << " nz=" << nz << " theta=" << theta1;
          ++checked;
        }
        if (pa > 1e-9) {
          EXPECT_NEAR(std::abs(scs_fz_power_element(nz, a, azim, F)) / pa, 1.0, 0.05)
              << "F=" << F.str() << " nz=" << nz << " theta=" << theta1;
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(CoherentState, OffDiagonalRatioConvergesAsOffsetShrinks) {
  const HalfInt F = half(5);
  const ScsAngles a{1.1, 0.2};
  for (int nz = 0; nz <= 2; ++nz) {
    double previous = 1e300;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
      const ScsAngles b{kPi - 1.1 + eps, 0.2 + kPi};
      const double ratio = std::abs(scs_fz_power_element(nz, a, b, F)) /
                           scs_offdiag_asymptotic(nz, F, 1.1, eps, ScsOffset::kPolar);
      EXPECT_LT(std::abs(ratio - 1.0), previous);
      previous = std::abs(ratio - 1.0);
    }
    EXPECT_LT(previous, 0.05);
  }
}

TEST(CoherentState, AntipodalDiagonalDifferentialMatchesLeadingOrder) {
  for (int tf = 2; tf <= 30; ++tf) {
    const double f = 0.5 * tf;
    for (int nz = 0; nz <= 5; ++nz) {
      for (double th : {0.3, 0.7, 2.0}) {
        const double exact = scs_diag_differential(nz, {th, 0.1}, {kPi - th, 0.1 + kPi}, half(tf));
        const double approx = scs_diag_differential_asymptotic(nz, half(tf), th);
        const double bound = 2.0 * nz * nz * std::abs(std::cos(th)) * std::pow(f, nz - 1);
        EXPECT_LE(std::abs(exact - approx), bound + 1e-9 * std::pow(f, nz)) << tf << " " << nz << " " << th;
      }
    }
  }
}

}  // namespace
}  // namespace darkcat
