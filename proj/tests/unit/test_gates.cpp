// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "darkcat/gates.hpp"
#include "support/generators.hpp"

namespace darkcat {
namespace {

using testing::Gen;
using testing::spins_up_to;

CVector scs(HalfInt fg, double theta, double phi) { return spin_coherent_state(ScsAngles{theta, phi}, fg); }

Eigen::Vector3d spin_direction(HalfInt fg, const CVector& psi) {
  const SpinOps ops = spin_operators(fg);
  return Eigen::Vector3d(psi.dot(ops.fx * psi).real(), psi.dot(ops.fy * psi).real(), psi.dot(ops.fz * psi).real());
}

double bright_residual(const DarkSpinSpace& space, const SphericalRabi& omega, const CVector& ground) {
  return (laser_coupling(space, omega) * space.embed_ground(ground)).norm();
}

TEST(Drive, EquatorAndPole) {
  const SphericalRabi x = drive_from_angles(0.0, kPi / 2, 2.0);
  EXPECT_NEAR(std::abs(x.plus + std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.minus - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(x.zero), 0.0, 1e-15);
  const SphericalRabi z = drive_from_angles(0.4, 0.0, 2.0);
  EXPECT_NEAR(std::abs(z.zero - 2.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z.plus) + std::abs(z.minus), 0.0, 1e-15);
}

TEST(Drive, AntipodalCoherentStatesAreDark) {
  Gen gen(51);
  for (HalfInt fg : spins_up_to(8, 2)) {
    const DarkSpinSpace space(fg);
    for (int trial = 0; trial < 10; ++trial) {
      const double a = gen.uniform(-kPi, kPi), b = gen.uniform(0.0, kPi);
      const SphericalRabi d = drive_from_angles(a, b, 1.0);
      EXPECT_LT(bright_residual(space, d, scs(fg, b, a)), 1e-12);
      EXPECT_LT(bright_residual(space, d, scs(fg, kPi - b, kPi + a)), 1e-12);
    }
  }
}

TEST(Profiles, UzContinuousAtSegmentBoundaries) {
  const RampProfile p = uz_profile(8.0, 1.0);
  for (std::size_t k = 1; k + 1 < p.breaks.size(); ++k) {
    const double t = p.breaks[k];
    const AngleSample left = p.angles(t, static_cast<int>(k) - 1), right = p.angles(t, static_cast<int>(k));
    EXPECT_NEAR(left.alpha, right.alpha, 1e-15) << k;
    EXPECT_NEAR(left.beta, right.beta, 1e-15) << k;
  }
  const AngleSample start = p.angles(0.0, 0), end = p.angles(8.0, 3);
  EXPECT_NEAR(start.beta, kPi / 2, 1e-15);
  EXPECT_NEAR(end.alpha, 0.0, 1e-15);
  EXPECT_NEAR(end.beta, kPi / 2, 1e-15);
}

TEST(Profiles, UzRotationAngle) {
  EXPECT_NEAR(uz_rotation_angle(whole(4)), 8.0 * kDefaultAlpha1 * std::cos(kPi / 2 - kDefaultBeta1), 1e-15);
  EXPECT_NEAR(uz_rotation_angle(whole(4)), 0.96676807707, 1e-10);
}

TEST(Profiles, UzDerivativesMatchFiniteDifferences) {
  const RampProfile p = uz_profile(10.0, 1.0);
  for (int seg = 0; seg < 4; ++seg) {
    const double t = 0.5 * (p.breaks[seg] + p.breaks[seg + 1]) + 0.1;
    const double h = 1e-6;
    const AngleSample a = p.angles(t, seg), ap = p.angles(t + h, seg), am = p.angles(t - h, seg);
    EXPECT_NEAR(a.alpha_dot, (ap.alpha - am.alpha) / (2 * h), 1e-8);
    EXPECT_NEAR(a.beta_dot, (ap.beta - am.beta) / (2 * h), 1e-8);
  }
}

TEST(Profiles, InstantaneousDarkPairStaysAntipodalAndDark) {
  for (HalfInt fg : {whole(1), half(3), whole(4)}) {
    const DarkSpinSpace space(fg);
    for (const RampProfile& p : {uz_profile(1.0, 1.0), ux_profile(1.0, 1.0)}) {
      for (int k = 0; k <= 200; ++k) {
        const double t = k / 200.0;
        const AngleSample a = p.angles(t, p.segment_of(t));
        const SphericalRabi d = p.drive_at(t);
        const CVector ds1 = scs(fg, a.beta, a.alpha);
        const CVector ds2 = scs(fg, kPi - a.beta, kPi + a.alpha);
        EXPECT_LT(bright_residual(space, d, ds1), 1e-10);
        EXPECT_LT(bright_residual(space, d, ds2), 1e-10);
        const Eigen::Vector3d b1 = spin_direction(fg, ds1), b2 = spin_direction(fg, ds2);
        EXPECT_NEAR((b1 + b2).norm(), 0.0, 1e-12);
        EXPECT_NEAR(b1.norm(), fg.value(), 1e-12);
      }
    }
  }
}

TEST(Profiles, UxEndpointIsNegatedDrive) {
  const RampProfile p = ux_profile(3.0, 1.0);
  const CartesianRabi c0 = cartesian_rabi(p.drive_at(0.0)), c1 = cartesian_rabi(p.drive_at(3.0));
  EXPECT_NEAR(std::abs(c0.x + c1.x), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c1.y), 0.0, 1e-15);
}

TEST(Profiles, PrepTurnOnOrder) {
  const RampProfile p = prep_plus_profile(5.0, 1.0);
  EXPECT_EQ(std::abs(p.drive_at(0.0).plus), 0.0);
  EXPECT_NEAR(std::abs(p.drive_at(0.0).minus), 1.0, 1e-15);
  const SphericalRabi end = p.drive_at(5.0);
  EXPECT_NEAR(std::abs(end.plus), std::abs(end.minus), 1e-15);
  // |Fg, -Fg> only couples through Omega^{+1}.
  const DarkSpinSpace space(whole(3));
  EXPECT_LT(bright_residual(space, p.drive_at(0.0), basis_state(whole(3), whole(-3))), 1e-15);
  for (int k = 0; k <= 50; ++k) EXPECT_NEAR(p.drive_at(0.1 * k).norm(), 1.0, 1e-14);
}

TEST(Profiles, HolonomicStagesAreContinuous) {
  const RampProfile p = ux_holonomic_profile(0.8, 3.0, 1.0);
  for (int k = 1; k <= 2; ++k) {
    const double t = p.breaks[k];
    EXPECT_NEAR(std::abs(p.drive(t, k - 1).minus - p.drive(t, k).minus), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(p.drive(1.0, 0).minus), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.drive(3.0, 2).minus - p.drive(0.0, 0).minus), 0.0, 1e-14);
}

TEST(CounterDiabatic, StaticProfileHasNoTerm) {
  const DarkSpinSpace space(whole(2));
  RampProfile p = uz_profile(1.0, 1.0);
  p.angles = [](double, int) { return AngleSample{0.3, 1.1, 0.0, 0.0}; };
  EXPECT_EQ(counter_diabatic_term(space, p, 0.5, 0, CdForm::kGeneric).norm(), 0.0);
}

TEST(CounterDiabatic, UxGenericMatchesClosedForm) {
  const DarkSpinSpace space(whole(3));
  const RampProfile p = ux_profile(7.0, 1.0);
  for (double t : {0.0, 2.0, 7.0}) {
    const CMatrix g = counter_diabatic_term(space, p, t, 0, CdForm::kGeneric);
    EXPECT_LT((g - (kPi / 7.0) * space.fgz()).norm(), 1e-14);
    EXPECT_LT((counter_diabatic_term(space, p, t, 0, CdForm::kPerSegment) - g).norm(), 1e-14);
  }
}

TEST(CounterDiabatic, AmplitudeRampsRejected) {
  const DarkSpinSpace space(whole(2));
  EXPECT_THROW(counter_diabatic_term(space, prep_plus_profile(1.0, 1.0), 0.1, 0, CdForm::kGeneric), InvalidArgument);
}

TEST(CounterDiabatic, TracksInstantaneousDarkStatesExactly) {
  GateSpec spec;
  spec.fg = whole(3);
  spec.duration = 20.0;
  spec.cd = CdForm::kGeneric;
  const RampProfile p = make_profile(spec);
  const DarkSpinSpace space(spec.fg);
  std::vector<double> times;
  for (int k = 0; k <= 40; ++k) times.push_back(spec.duration * k / 40.0);
  const CVector psi0 = scs(spec.fg, kPi / 2, 0.0);
  const auto traj = gate_state_trajectory(spec, psi0, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const AngleSample a = p.angles(times[k], p.segment_of(times[k]));
    CMatrix span(space.dim(), 2);
    span << space.embed_ground(scs(spec.fg, a.beta, a.alpha)),
        space.embed_ground(scs(spec.fg, kPi - a.beta, kPi + a.alpha));
    const CVector inside = span * (span.adjoint() * traj[k]);
    EXPECT_LT((traj[k] - inside).squaredNorm(), 1e-8) << times[k];
  }
}

TEST(Uz, CounterDiabaticGateIsExactAtShortRamp) {
  GateSpec spec;
  spec.duration = 50.0;
  spec.cd = CdForm::kGeneric;
  const GateResult r = simulate_gate(spec);
  EXPECT_LT(r.infidelity.value, 1e-8);
  EXPECT_NEAR(r.channel.alpha_star, uz_rotation_angle(spec.fg), 1e-6);
  spec.cd = CdForm::kNone;
  EXPECT_GT(simulate_gate(spec).infidelity.value, 1e-3);
}

TEST(Uz, AdiabaticAngleMatchesFormula) {
  for (int fg : {1, 2, 4}) {
    GateSpec spec;
    spec.fg = whole(fg);
    spec.duration = 2000.0;
    const GateResult r = simulate_gate(spec);
    EXPECT_NEAR(r.channel.alpha_star, uz_rotation_angle(spec.fg), 1e-3) << fg;
    EXPECT_LT(r.infidelity.value, 1e-3);
  }
}

TEST(Uz, NoiselessUnitaryAndOperatorPathsAgree) {
  GateSpec spec;
  spec.fg = whole(2);
  spec.duration = 60.0;
  const GateResult fast = simulate_gate(spec);
  OUNoise off;
  off.kappa = 0.0;
  off.lambda = 1.0;
  const GateResult slow = simulate_gate(spec, off);
  EXPECT_LT((fast.ptm - slow.ptm).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Uz, NoisyGateIsBiased) {
  GateSpec spec;
  spec.fg = whole(3);
  spec.duration = 400.0;
  OUNoise n;
  n.kappa = 1e-5;
  n.lambda = 0.1;
  const GateResult r = simulate_gate(spec, n);
  EXPECT_TRUE(r.infidelity.biased);
  EXPECT_LT(10.0 * (1.0 - r.channel.residual(3, 3)), 1.0 - r.channel.residual(1, 1));
  EXPECT_NEAR(r.channel.residual(1, 1), r.channel.residual(2, 2), 1e-6);
  for (int d = 0; d < 4; ++d) EXPECT_LE(std::abs(r.ptm(d, d)), 1.0 + 1e-6);
}

TEST(Ux, SwapsLogicalStates) {
  GateSpec spec;
  spec.kind = GateKind::kUx;
  spec.fg = whole(2);
  const LogicalBasis basis = stabilization_logical_basis(spec.fg);
  // The sweep starts and stops abruptly, so the deficit falls off as a power of T only.
  double previous = 1.0;
  for (double T : {500.0, 2000.0, 32000.0}) {
    spec.duration = T;
    const auto traj = gate_state_trajectory(spec, basis.ket0, {0.0, T});
    const double deficit = 1.0 - std::abs(basis.ket1.dot(traj.back()));
    EXPECT_LT(deficit, previous) << T;
    previous = deficit;
  }
  EXPECT_LT(previous, 1e-6);
  spec.cd = CdForm::kGeneric;
  spec.duration = 20.0;
  EXPECT_LT(simulate_gate(spec).infidelity.value, 1e-10);
}

TEST(Ux, VirtualVariantIsExactX) {
  for (int fg = 1; fg <= 3; ++fg) {
    EXPECT_LT((virtual_ux_ptm(stabilization_logical_basis(whole(fg))) - pauli_x_ptm()).norm(), 1e-14);
  }
}

TEST(Prep, FidelityRisesWithRampTime) {
  double previous = 0.0;
  for (double T : {50.0, 100.0, 200.0, 400.0}) {
    GateSpec spec;
    spec.kind = GateKind::kPrepPlus;
    spec.fg = whole(3);
    spec.duration = T;
    const double f = simulate_gate(spec).prep_fidelity;
    EXPECT_GT(f, previous) << T;
    previous = f;
  }
  EXPECT_GT(previous, 0.99);
}

TEST(Prep, ParitySectorsNeverMix) {
  // With Omega^0 = 0 the drive changes m by 2 within the ground manifold.
  GateSpec spec;
  spec.kind = GateKind::kPrepPlus;
  spec.fg = whole(2);
  spec.duration = 30.0;
  const auto traj = gate_state_trajectory(spec, basis_state(spec.fg, -spec.fg), {0.0, 10.0, 30.0});
  const CMatrix parity = parity_operator(spec.fg);
  for (const CVector& psi : traj) EXPECT_NEAR(psi.dot(parity * psi).real(), 1.0, 1e-9);
}

TEST(Holonomic, ZeroAngleIsIdentity) {
  for (int tf : {2, 3, 4}) {
    GateSpec spec;
    spec.kind = GateKind::kUxHolonomic;
    spec.fg = half(tf);
    spec.alpha_x = 0.0;
    spec.duration = 600.0;
    const GateResult r = simulate_gate(spec);
    EXPECT_LT((r.ptm - Ptm::Identity()).cwiseAbs().maxCoeff(), 1e-4) << tf;
  }
}

TEST(Holonomic, RelativePhaseSignFollowsSpinType) {
  for (int tf : {2, 3}) {
    GateSpec spec;
    spec.kind = GateKind::kUxHolonomic;
    spec.fg = half(tf);
    spec.alpha_x = 0.7;
    spec.duration = 600.0;
    const GateResult r = simulate_gate(spec);
    const double expect = tf % 2 == 0 ? -0.7 : 0.7;
    EXPECT_NEAR(r.nominal_angle, expect, 1e-15);
    EXPECT_NEAR(r.channel.alpha_star, expect, 2e-3) << tf;
  }
}

TEST(Holonomic, PiMatchesEquatorialSwapOnPopulations) {
  GateSpec spec;
  spec.kind = GateKind::kUxHolonomic;
  spec.fg = whole(2);
  spec.alpha_x = kPi;
  spec.duration = 600.0;
  const GateResult r = simulate_gate(spec);
  // A rotation by pi about x sends Z -> -Z.
  EXPECT_NEAR(r.ptm(3, 3), -1.0, 1e-4);
  EXPECT_NEAR(r.ptm(1, 1), 1.0, 1e-4);
}

}  // namespace
}  // namespace darkcat
