// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/liouville.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace darkcat {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + " must be square");
}

CMatrix kron(const CMatrix& a, const CMatrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

int hilbert_dim(const Superoperator& s) {
  if (s.matrix.rows() != s.matrix.cols() ||
      s.matrix.rows() != static_cast<Eigen::Index>(s.dim) * s.dim) {
    throw InvalidArgument("superoperator does not match its Hilbert dimension");
  }
  return s.dim;
}

}  // namespace

CVector vec(const CMatrix& op) { return Eigen::Map<const CVector>(op.data(), op.size()); }

CMatrix unvec(const CVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) throw InvalidArgument("vector is not n^2 long");
  return Eigen::Map<const CMatrix>(v.data(), n, n);
}

Superoperator vectorize_hamiltonian(const CMatrix& h) {
  require_square(h, "Hamiltonian");
  const int n = static_cast<int>(h.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  return {-kI * (kron(id, h) - kron(h.transpose(), id)), n};
}

Superoperator vectorize_dissipator(const JumpChannel& ch) {
  require_square(ch.op, "jump operator");
  if (ch.rate < 0.0) throw InvalidArgument("negative jump rate");
  const int n = static_cast<int>(ch.op.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix k = ch.op.adjoint() * ch.op;
  return {ch.rate * (kron(ch.op.conjugate(), ch.op) - 0.5 * (kron(id, k) + kron(k.transpose(), id))), n};
}

Superoperator commutator_superoperator(const CMatrix& op) {
  require_square(op, "operator");
  const int n = static_cast<int>(op.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  return {kron(id, op) - kron(op.transpose(), id), n};
}

Superoperator lindbladian(const CMatrix& h, const std::vector<JumpChannel>& jumps) {
  Superoperator l = vectorize_hamiltonian(h);
  for (const JumpChannel& ch : jumps) {
    if (ch.op.rows() != h.rows()) throw InvalidArgument("jump operator dimension mismatch");
    l.matrix += vectorize_dissipator(ch).matrix;
  }
  return l;
}

RMatrix ou3_chain_generator(double lambda) {
  RMatrix g(3, 3);
  g << -1.0, 0.5, 0.0, 1.0, -1.0, 1.0, 0.0, 0.5, -1.0;
  return lambda * g;
}

Eigen::Vector3d ou3_stationary() { return {0.25, 0.5, 0.25}; }

Eigen::Vector3d ou3_levels(const OUNoise& noise) {
  return std::sqrt(noise.kappa * noise.lambda) * Eigen::Vector3d(-1.0, 0.0, 1.0);
}

Superoperator build_ou3_system(const Superoperator& l, const CMatrix& noise_op, const OUNoise& noise) {
  const int n = hilbert_dim(l);
  if (noise_op.rows() != n || noise_op.cols() != n) throw InvalidArgument("noise operator dimension mismatch");
  if (!(noise.kappa >= 0.0) || !(noise.lambda > 0.0)) throw InvalidArgument("OU noise needs kappa >= 0, lambda > 0");
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  const CMatrix comm = commutator_superoperator(noise_op).matrix;
  const CMatrix chain = ou3_chain_generator(noise.lambda).cast<cplx>();
  const Eigen::Vector3d x = ou3_levels(noise);
  CMatrix g = kron(chain, CMatrix::Identity(n2, n2));
  for (int k = 0; k < 3; ++k) {
    g.block(k * n2, k * n2, n2, n2) += l.matrix - kI * x(k) * comm;
  }
  return {std::move(g), n};
}

CVector ou3_initial(const CMatrix& rho0) {
  const CVector v = vec(rho0);
  const Eigen::Vector3d p = ou3_stationary();
  CVector u(3 * v.size());
  for (int k = 0; k < 3; ++k) u.segment(k * v.size(), v.size()) = p(k) * v;
  return u;
}

CMatrix ou3_average(const CVector& u, int n) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  if (u.size() != 3 * n2) throw InvalidArgument("marginal state has the wrong size");
  return unvec(u.segment(0, n2) + u.segment(n2, n2) + u.segment(2 * n2, n2), n);
}

Superoperator white_noise_lindbladian(const Superoperator& l, const CMatrix& noise_op, double kappa) {
  hilbert_dim(l);
  Superoperator out = l;
  out.matrix += vectorize_dissipator({noise_op, kappa}).matrix;
  return out;
}

Spectrum spectrum(const Superoperator& l) {
  Eigen::ComplexEigenSolver<CMatrix> es(l.matrix);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  Spectrum s;
  s.eigenvalues = es.eigenvalues();
  s.right = es.eigenvectors();
  s.left = s.right.inverse();
  return s;
}

double dissipative_gap(const Superoperator& l) {
  Eigen::ComplexEigenSolver<CMatrix> es(l.matrix, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  const double tol = 1e-9 * l.matrix.norm();
  double gap = std::numeric_limits<double>::infinity();
  for (const cplx& ev : es.eigenvalues()) {
    if (ev.real() < -tol) gap = std::min(gap, -ev.real());
  }
  if (!std::isfinite(gap)) throw NumericalError("generator has no decaying mode");
  return gap;
}

CMatrix propagator(const Superoperator& l, double t) { return (l.matrix * t).exp(); }

std::vector<CVector> evolve(const Superoperator& g, const CVector& x0, const std::vector<double>& times,
                            EvolveMethod method, const OdeOptions& opts) {
  if (g.matrix.rows() != g.matrix.cols() || g.matrix.cols() != x0.size()) {
    throw InvalidArgument("generator and state dimensions differ");
  }
  if (method == EvolveMethod::kAdaptive) {
    const CMatrix& m = g.matrix;
    return integrate_ode([&m](double, ConstVecMap y, VecMap dy) { dy.noalias() = m * y; }, x0, times, opts);
  }
  std::vector<CVector> out{x0};
  double cached_dt = -1.0;
  CMatrix step;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!(dt > 0.0)) throw InvalidArgument("output times must increase strictly");
    if (std::abs(dt - cached_dt) > 1e-14 * std::abs(dt)) {
      step = (g.matrix * dt).exp();
      cached_dt = dt;
    }
    out.push_back(step * out.back());
  }
  return out;
}

namespace {

// Builds the non-Hermitian effective Hamiltonian H - (i/2) sum r a^dag a.
struct OperatorRhs {
  const OperatorModel& model;
  CMatrix decay;  // sum r a^dag a
  std::vector<CMatrix> scaled_jumps;  // sqrt(r) a

  explicit OperatorRhs(const OperatorModel& m) : model(m) {
    decay = CMatrix::Zero(m.dim, m.dim);
    for (const JumpChannel& ch : m.jumps) {
      if (ch.op.rows() != m.dim || ch.op.cols() != m.dim) throw InvalidArgument("jump operator dimension mismatch");
      if (ch.rate < 0.0) throw InvalidArgument("negative jump rate");
      if (ch.rate == 0.0) continue;
      decay += ch.rate * ch.op.adjoint() * ch.op;
      scaled_jumps.push_back(std::sqrt(ch.rate) * ch.op);
    }
  }

  void lindblad(const CMatrix& heff, const Eigen::Map<const CMatrix>& rho, Eigen::Map<CMatrix>& out) const {
    out.noalias() = -kI * (heff * rho);
    out.noalias() += kI * (rho * heff.adjoint());
    for (const CMatrix& a : scaled_jumps) out.noalias() += a * rho * a.adjoint();
  }
};

}  // namespace

std::vector<CMatrix> evolve_operator_piecewise(const OperatorModel& model,
                                               const std::function<CMatrix(double, int)>& hamiltonian,
                                               const std::vector<double>& breaks, const CMatrix& rho0,
                                               const std::vector<double>& times, const OdeOptions& opts) {
  const int n = model.dim;
  if (rho0.rows() != n || rho0.cols() != n) throw InvalidArgument("initial operator dimension mismatch");
  if (!hamiltonian) throw InvalidArgument("operator model needs a Hamiltonian");
  const OperatorRhs ops(model);
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  const bool colored = model.noise_op.has_value();
  std::vector<CVector> traj;
  if (!colored) {
    auto rhs = [&](double t, int k, ConstVecMap y, VecMap dy) {
      const CMatrix heff = hamiltonian(t, k) - 0.5 * kI * ops.decay;
      Eigen::Map<const CMatrix> rho(y.data(), n, n);
      Eigen::Map<CMatrix> out(dy.data(), n, n);
      ops.lindblad(heff, rho, out);
    };
    traj = integrate_ode_piecewise(rhs, vec(rho0), breaks, times, opts);
  } else {
    const CMatrix& o = *model.noise_op;
    if (o.rows() != n || o.cols() != n) throw InvalidArgument("noise operator dimension mismatch");
    const RMatrix chain = ou3_chain_generator(model.noise.lambda);
    const Eigen::Vector3d x = ou3_levels(model.noise);
    auto rhs = [&](double t, int seg, ConstVecMap y, VecMap dy) {
      const CMatrix heff = hamiltonian(t, seg) - 0.5 * kI * ops.decay;
      for (int k = 0; k < 3; ++k) {
        Eigen::Map<const CMatrix> rho(y.data() + k * n2, n, n);
        Eigen::Map<CMatrix> out(dy.data() + k * n2, n, n);
        ops.lindblad(heff + x(k) * o, rho, out);
        for (int j = 0; j < 3; ++j) {
          if (chain(k, j) != 0.0) out += chain(k, j) * Eigen::Map<const CMatrix>(y.data() + j * n2, n, n);
        }
      }
    };
    traj = integrate_ode_piecewise(rhs, ou3_initial(rho0), breaks, times, opts);
  }
  std::vector<CMatrix> out;
  out.reserve(traj.size());
  for (const CVector& v : traj) out.push_back(colored ? ou3_average(v, n) : unvec(v, n));
  return out;
}

std::vector<CMatrix> evolve_operator(const OperatorModel& model, const CMatrix& rho0,
                                     const std::vector<double>& times, const OdeOptions& opts) {
  if (!model.hamiltonian) throw InvalidArgument("operator model needs a Hamiltonian");
  if (times.empty()) throw InvalidArgument("evolution needs at least the initial time");
  const std::vector<double> breaks{times.front(), std::max(times.back(), times.front() + 1.0)};
  return evolve_operator_piecewise(
      model, [&](double t, int) { return model.hamiltonian(t); }, breaks, rho0, times, opts);
}

std::vector<CMatrix> evolve_unitary_piecewise(const std::function<CMatrix(double, int)>& hamiltonian,
                                              const std::vector<double>& breaks, const CMatrix& u0,
                                              const std::vector<double>& times, const OdeOptions& opts) {
  const Eigen::Index rows = u0.rows(), cols = u0.cols();
  auto rhs = [&](double t, int k, ConstVecMap y, VecMap dy) {
    Eigen::Map<CMatrix> out(dy.data(), rows, cols);
    out.noalias() = -kI * (hamiltonian(t, k) * Eigen::Map<const CMatrix>(y.data(), rows, cols));
  };
  const auto traj =
      integrate_ode_piecewise(rhs, Eigen::Map<const CVector>(u0.data(), u0.size()), breaks, times, opts);
  std::vector<CMatrix> out;
  out.reserve(traj.size());
  for (const CVector& v : traj) out.emplace_back(Eigen::Map<const CMatrix>(v.data(), rows, cols));
  return out;
}

std::vector<CMatrix> evolve_unitary(const std::function<CMatrix(double)>& hamiltonian, const CMatrix& u0,
                                    const std::vector<double>& times, const OdeOptions& opts) {
  if (times.empty()) throw InvalidArgument("evolution needs at least the initial time");
  const std::vector<double> breaks{times.front(), std::max(times.back(), times.front() + 1.0)};
  return evolve_unitary_piecewise([&](double t, int) { return hamiltonian(t); }, breaks, u0, times, opts);
}

}  // namespace darkcat
