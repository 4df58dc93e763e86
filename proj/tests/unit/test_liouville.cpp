// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "darkcat/liouville.hpp"
#include "support/generators.hpp"

namespace darkcat {
namespace {

using testing::Gen;

CMatrix lowering2() {
  CMatrix a = CMatrix::Zero(2, 2);
  a(1, 0) = 1.0;  // |g><e| with |e> = index 0
  return a;
}

CMatrix direct_lindblad(const CMatrix& h, const std::vector<JumpChannel>& jumps, const CMatrix& rho) {
  CMatrix out = -kI * (h * rho - rho * h);
  for (const JumpChannel& ch : jumps) {
    const CMatrix k = ch.op.adjoint() * ch.op;
    out += ch.rate * (ch.op * rho * ch.op.adjoint() - 0.5 * (k * rho + rho * k));
  }
  return out;
}

TEST(Vectorization, RoundTripIsColumnStacked) {
  CMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const CVector v = vec(m);
  EXPECT_EQ(v(1), cplx(3.0));
  EXPECT_EQ(unvec(v, 2), m);
}

TEST(Vectorization, DiagonalHamiltonianCommutesWithDiagonalState) {
  const CMatrix h = RVector::LinSpaced(5, -1.0, 3.0).cast<cplx>().asDiagonal();
  const CMatrix rho = RVector::LinSpaced(5, 0.1, 0.3).cast<cplx>().asDiagonal();
  EXPECT_LT((vectorize_hamiltonian(h).matrix * vec(rho)).norm(), 1e-15);
}

TEST(Vectorization, MatchesOperatorForm) {
  Gen gen(31);
  for (int n = 2; n <= 12; n += 2) {
    const CMatrix h = gen.hermitian(n);
    std::vector<JumpChannel> jumps{{gen.matrix(n), 0.3}, {gen.matrix(n), 1.1}};
    const CMatrix rho = gen.matrix(n);
    const Superoperator l = lindbladian(h, jumps);
    EXPECT_LT((unvec(l.matrix * vec(rho), n) - direct_lindblad(h, jumps, rho)).norm(), 1e-11);
    // Trace preservation: vec(1)^dag L = 0.
    const CVector id = vec(CMatrix::Identity(n, n));
    EXPECT_LT((id.adjoint() * l.matrix).norm(), 1e-10 * l.matrix.norm());
  }
}

TEST(Vectorization, AmplitudeDampingDecay) {
  const double gamma = 0.7;
  const Superoperator l = lindbladian(CMatrix::Zero(2, 2), {{lowering2(), gamma}});
  CMatrix rho0 = CMatrix::Zero(2, 2);
  rho0(0, 0) = 1.0;
  const std::vector<double> times{0.0, 0.5, 1.0, 3.0};
  for (EvolveMethod m : {EvolveMethod::kAdaptive, EvolveMethod::kExponential}) {
    const auto traj = evolve(l, vec(rho0), times, m);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_NEAR(unvec(traj[i], 2)(0, 0).real(), std::exp(-gamma * times[i]), 1e-10);
    }
  }
  EXPECT_NEAR(dissipative_gap(l), gamma / 2, 1e-12);
}

TEST(Evolve, ZeroGeneratorIsConstant) {
  const Superoperator g{CMatrix::Zero(4, 4), 2};
  CVector x0(4);
  x0 << 1.0, 2.0, 3.0, 4.0;
  for (const CVector& x : evolve(g, x0, {0.0, 1.0, 10.0})) EXPECT_EQ(x, x0);
}

TEST(Evolve, PureHamiltonianMatchesSchrodinger) {
  Gen gen(32);
  const int n = 17;
  const CMatrix h = gen.hermitian(n);
  CVector psi = CVector::Zero(n);
  psi(3) = 1.0;
  const double t = 2.5;
  const CVector psi_t = (-kI * h * t).exp() * psi;
  const CMatrix rho0 = psi * psi.adjoint();
  const auto traj = evolve(vectorize_hamiltonian(h), vec(rho0), {0.0, t});
  const double fid = psi_t.dot(unvec(traj.back(), n) * psi_t).real();
  EXPECT_NEAR(fid, 1.0, 1e-9);
}

TEST(Evolve, LinearityAndHermiticity) {
  Gen gen(33);
  const int n = 6;
  const Superoperator l = lindbladian(gen.hermitian(n), {{gen.matrix(n), 0.4}});
  const CMatrix r1 = gen.density(n), r2 = gen.density(n);
  const cplx a(0.3, -0.2), b(1.4, 0.0);
  const std::vector<double> times{0.0, 1.7};
  const CVector e1 = evolve(l, vec(r1), times).back();
  const CVector e2 = evolve(l, vec(r2), times).back();
  const CVector e12 = evolve(l, vec(a * r1 + b * r2), times).back();
  EXPECT_LT((e12 - a * e1 - b * e2).norm(), 1e-10);
  const CMatrix out = unvec(e1, n);
  EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-9);
}

TEST(OrnsteinUhlenbeck, StationaryDistribution) {
  const RMatrix chain = ou3_chain_generator(2.3);
  EXPECT_LT((chain * ou3_stationary()).norm(), 1e-15);
  EXPECT_LT((RVector::Ones(3).transpose() * chain).norm(), 1e-15);
}

TEST(OrnsteinUhlenbeck, StationaryCorrelation) {
  const OUNoise noise{0.37, 1.9};
  const Eigen::Vector3d x = ou3_levels(noise);
  const Eigen::Vector3d p = ou3_stationary();
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    const RMatrix prop = (ou3_chain_generator(noise.lambda) * t).exp();
    const double corr = x.dot(prop * p.cwiseProduct(x));
    EXPECT_NEAR(corr, 0.5 * noise.kappa * noise.lambda * std::exp(-noise.lambda * t), 1e-12);
  }
}

TEST(OrnsteinUhlenbeck, ZeroKappaReproducesLindblad) {
  Gen gen(34);
  const int n = 4;
  const Superoperator l = lindbladian(gen.hermitian(n), {{gen.matrix(n), 0.2}});
  const CMatrix rho0 = gen.density(n);
  const Superoperator ou = build_ou3_system(l, gen.hermitian(n), {0.0, 1.0});
  const std::vector<double> times{0.0, 2.0};
  const CMatrix avg = ou3_average(evolve(ou, ou3_initial(rho0), times).back(), n);
  const CMatrix ref = unvec(evolve(l, vec(rho0), times).back(), n);
  EXPECT_LT((avg - ref).norm(), 1e-10);
}

TEST(OrnsteinUhlenbeck, WhiteNoiseLimit) {
  // Two-level dephasing: D[sz/2] damps coherences at kappa/2.
  CMatrix sz = CMatrix::Zero(2, 2);
  sz(0, 0) = 0.5;
  sz(1, 1) = -0.5;
  const double kappa = 0.2;
  const Superoperator l0{CMatrix::Zero(4, 4), 2};
  CMatrix rho0 = CMatrix::Constant(2, 2, 0.5);
  const double t = 5.0;
  const Superoperator white = white_noise_lindbladian(l0, sz, kappa);
  const cplx coh = unvec(evolve(white, vec(rho0), {0.0, t}, EvolveMethod::kExponential).back(), 2)(0, 1);
  EXPECT_NEAR(coh.real(), 0.5 * std::exp(-0.5 * kappa * t), 1e-12);
  const Superoperator ou = build_ou3_system(l0, sz, {kappa, 1e3});
  const cplx coh_ou =
      ou3_average(evolve(ou, ou3_initial(rho0), {0.0, t}, EvolveMethod::kExponential).back(), 2)(0, 1);
  EXPECT_NEAR(coh_ou.real() / coh.real(), 1.0, 0.02);
  EXPECT_LT((white_noise_lindbladian(l0, sz, 0.0).matrix - l0.matrix).norm(), 1e-300);
}

TEST(OrnsteinUhlenbeck, SlowNoiseDephasesLessThanWhite) {
  CMatrix sz = CMatrix::Zero(2, 2);
  sz(0, 0) = 0.5;
  sz(1, 1) = -0.5;
  const double kappa = 0.2, t = 3.0;
  const Superoperator l0{CMatrix::Zero(4, 4), 2};
  const CMatrix rho0 = CMatrix::Constant(2, 2, 0.5);
  double previous = 1.0;
  for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
    const Superoperator ou = build_ou3_system(l0, sz, {kappa, lambda});
    const double coh =
        ou3_average(evolve(ou, ou3_initial(rho0), {0.0, t}, EvolveMethod::kExponential).back(), 2)(0, 1).real();
    EXPECT_LT(coh, previous);
    previous = coh;
  }
}

TEST(OperatorForm, MatchesSuperoperatorEvolution) {
  Gen gen(35);
  const int n = 5;
  const CMatrix h = gen.hermitian(n);
  const std::vector<JumpChannel> jumps{{gen.matrix(n), 0.3}};
  const CMatrix noise = gen.hermitian(n);
  const OUNoise ou{0.05, 0.8};
  const CMatrix rho0 = gen.density(n);
  const std::vector<double> times{0.0, 0.7, 1.5};
  OperatorModel model{n, [&](double) { return h; }, jumps, std::nullopt, {}};
  const auto a = evolve_operator(model, rho0, times);
  const Superoperator l = lindbladian(h, jumps);
  const auto b = evolve(l, vec(rho0), times, EvolveMethod::kExponential);
  EXPECT_LT((a.back() - unvec(b.back(), n)).norm(), 1e-9);
  model.noise_op = noise;
  model.noise = ou;
  const auto c = evolve_operator(model, rho0, times);
  const auto d = evolve(build_ou3_system(l, noise, ou), ou3_initial(rho0), times, EvolveMethod::kExponential);
  EXPECT_LT((c.back() - ou3_average(d.back(), n)).norm(), 1e-9);
}

TEST(OperatorForm, UnitaryMatchesExponential) {
  Gen gen(36);
  const CMatrix h = gen.hermitian(7);
  const auto u = evolve_unitary([&](double) { return h; }, CMatrix::Identity(7, 7), {0.0, 1.3});
  EXPECT_LT((u.back() - (-kI * h * 1.3).exp()).norm(), 1e-9);
}

TEST(Spectrum, BiorthogonalEigenvectors) {
  Gen gen(37);
  const Superoperator l = lindbladian(gen.hermitian(3), {{gen.matrix(3), 0.5}});
  const Spectrum s = spectrum(l);
  EXPECT_LT((s.left * s.right - CMatrix::Identity(9, 9)).norm(), 1e-9);
  EXPECT_LT((l.matrix * s.right - s.right * s.eigenvalues.asDiagonal()).norm(), 1e-9);
}

TEST(Evolve, RejectsDecreasingTimes) {
  const Superoperator g{CMatrix::Zero(1, 1), 1};
  EXPECT_THROW(evolve(g, CVector::Ones(1), {0.0, 1.0, 0.5}), InvalidArgument);
}

}  // namespace
}  // namespace darkcat
