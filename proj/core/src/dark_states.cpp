// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/dark_states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace darkcat {

CartesianRabi cartesian_rabi(const SphericalRabi& omega) {
  const double r2 = std::sqrt(2.0);
  CartesianRabi c;
  c.x = (omega.minus - omega.plus) / r2;
  c.y = kI * (omega.minus + omega.plus) / r2;
  c.z = omega.zero;
  const std::array<cplx, 3> v{c.x, c.y, c.z};
  const double scale = std::sqrt(std::norm(c.x) + std::norm(c.y) + std::norm(c.z));
  if (scale == 0.0) return c;
  // Strip the phase of the largest component; the rest must then be real.
  int big = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  const cplx unphase = std::conj(v[big]) / std::abs(v[big]);
  Eigen::Vector3d dir;
  double imag = 0.0;
  for (int i = 0; i < 3; ++i) {
    const cplx w = v[i] * unphase;
    dir(i) = w.real();
    imag = std::max(imag, std::abs(w.imag()));
  }
  c.real_up_to_phase = imag <= 1e-10 * scale;
  if (c.real_up_to_phase) {
    // Keep the sign of an already real vector rather than the largest-component sign.
    bool already_real = true;
    for (int i = 0; i < 3; ++i) already_real = already_real && std::abs(v[i].imag()) <= 1e-10 * scale;
    if (already_real) {
      for (int i = 0; i < 3; ++i) dir(i) = v[i].real();
    }
    c.direction = dir.normalized();
  }
  return c;
}

DarkSpinSpace::DarkSpinSpace(HalfInt fg) : fg_(fg), fe_(fg - whole(1)) {
  if (fg.twice() < 2) throw InvalidArgument("ground spin must be at least 1, got " + fg.str());
  const int ng = fg_.dim(), n = dim();
  for (int q = -1; q <= 1; ++q) {
    CMatrix c = CMatrix::Zero(n, n);
    for (int i = 0; i < ng; ++i) {
      const HalfInt m = basis_m(fg_, i);
      const HalfInt me = m + whole(q);
      if (std::abs(me.twice()) > fe_.twice()) continue;
      c(excited_index(me), i) = clebsch_gordan(fg_, m, q, fe_, me);
    }
    c_[q + 1] = std::move(c);
  }
  const SpinOps g = spin_operators(fg_);
  const SpinOps e = spin_operators(fe_);
  auto embed = [&](const CMatrix& op, int offset) {
    CMatrix out = CMatrix::Zero(n, n);
    out.block(offset, offset, op.rows(), op.cols()) = op;
    return out;
  };
  fgx_ = embed(g.fx, 0);
  fgy_ = embed(g.fy, 0);
  fgz_ = embed(g.fz, 0);
  fex_ = embed(e.fx, ng);
  fez_ = embed(e.fz, ng);
  pe_ = embed(CMatrix::Identity(excited_dim(), excited_dim()), ng);
}

CVector DarkSpinSpace::embed_ground(const CVector& v) const {
  if (v.size() != ground_dim()) throw InvalidArgument("ground vector has wrong dimension");
  CVector out = CVector::Zero(dim());
  out.head(ground_dim()) = v;
  return out;
}

CVector DarkSpinSpace::embed_excited(const CVector& v) const {
  if (v.size() != excited_dim()) throw InvalidArgument("excited vector has wrong dimension");
  CVector out = CVector::Zero(dim());
  out.tail(excited_dim()) = v;
  return out;
}

CMatrix DarkSpinSpace::embed_ground_operator(const CMatrix& op) const {
  if (op.rows() != ground_dim() || op.cols() != ground_dim()) {
    throw InvalidArgument("ground operator has wrong dimension");
  }
  CMatrix out = CMatrix::Zero(dim(), dim());
  out.topLeftCorner(ground_dim(), ground_dim()) = op;
  return out;
}

CMatrix laser_coupling(const DarkSpinSpace& space, const SphericalRabi& omega) {
  CMatrix v = CMatrix::Zero(space.dim(), space.dim());
  for (int q = -1; q <= 1; ++q) v += std::conj(omega[q]) * space.raising(q);
  return 0.5 * (v + v.adjoint());
}

CMatrix build_hds(const DriveConfig& cfg, bool include_decay) {
  const DarkSpinSpace space(cfg.fg);
  const cplx excited_shift = -(cfg.detuning + (include_decay ? 0.5 * kI * cfg.gamma : cplx(0.0)));
  return excited_shift * space.excited_projector() - cfg.differential_zeeman * space.fez() +
         laser_coupling(space, cfg.omega);
}

namespace {

void phase_fix(CVector& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  v *= std::conj(v(k)) / std::abs(v(k));
}

// Orthonormal basis of the column span of m (assumed full rank).
CMatrix orthonormal_columns(const CMatrix& m) {
  Eigen::HouseholderQR<CMatrix> qr(m);
  return qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
}

// Right null space of m with singular values below rel_tol * sigma_max.
CMatrix null_space(const CMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * smax) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

struct RootPair {
  ScsAngles a1, a2;
  bool degenerate = false;
};

// Points on the Riemann sphere with w = exp(i phi) tan(theta/2) solving
// a w^2 + b w + c = 0. Works in u = 1/w when the leading coefficient is small.
std::array<ScsAngles, 2> sphere_roots(cplx a, cplx b, cplx c) {
  const bool flip = std::abs(a) < std::abs(c);
  if (flip) std::swap(a, c);
  std::array<cplx, 2> x;
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx qp = -0.5 * (b + disc), qm = -0.5 * (b - disc);
  const cplx qv = std::abs(qp) >= std::abs(qm) ? qp : qm;
  if (std::abs(qv) == 0.0) {
    x = {cplx(0.0), cplx(0.0)};
  } else {
    x = {qv / a, c / qv};
  }
  std::array<ScsAngles, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double r = std::abs(x[i]);
    const double arg = r > 0.0 ? std::arg(x[i]) : 0.0;
    if (flip) {
      out[i] = {kPi - 2.0 * std::atan(r), r > 0.0 ? -arg : 0.0};
    } else {
      out[i] = {2.0 * std::atan(r), arg};
    }
    if (out[i].phi < 0.0) out[i].phi += 2.0 * kPi;
  }
  return out;
}

RootPair solve_dark_angles(const SphericalRabi& omega) {
  // Conjugated amplitudes, matching the coupling convention of laser_coupling().
  const cplx ap = std::conj(omega.plus), a0 = std::conj(omega.zero), am = std::conj(omega.minus);
  auto roots = sphere_roots(ap, -std::sqrt(2.0) * a0, am);
  RootPair rp;
  const double dist = (bloch_vector(roots[0]) - bloch_vector(roots[1])).norm();
  rp.degenerate = dist < 1e-6;
  const CartesianRabi cart = cartesian_rabi(omega);
  if (cart.real_up_to_phase) {
    const double d0 = (bloch_vector(roots[0]) - cart.direction).norm();
    const double d1 = (bloch_vector(roots[1]) - cart.direction).norm();
    if (d1 < d0) std::swap(roots[0], roots[1]);
  } else if (roots[1].theta < roots[0].theta ||
             (roots[1].theta == roots[0].theta && roots[1].phi < roots[0].phi)) {
    std::swap(roots[0], roots[1]);
  }
  if (rp.degenerate) {
    const Eigen::Vector3d mean = (bloch_vector(roots[0]) + bloch_vector(roots[1])).normalized();
    double phi = std::atan2(mean.y(), mean.x());
    if (phi < 0.0) phi += 2.0 * kPi;
    roots[0] = roots[1] = {std::acos(std::clamp(mean.z(), -1.0, 1.0)), phi};
  }
  rp.a1 = roots[0];
  rp.a2 = roots[1];
  return rp;
}

void require_drive(const DriveConfig& cfg) {
  if (!(cfg.omega.norm() > 0.0)) throw InvalidArgument("dark states need a nonzero drive");
}

}  // namespace

cplx rotated_minus_component(const SphericalRabi& omega, double alpha, double beta) {
  const cplx z = std::exp(kI * alpha);
  const double c = std::cos(beta), s = std::sin(beta);
  return z * z * 0.5 * (1.0 - c) * std::conj(omega.plus) -
         z * s / std::sqrt(2.0) * std::conj(omega.zero) + 0.5 * (1.0 + c) * std::conj(omega.minus);
}

DarkStatePair find_dark_states_null(const DriveConfig& cfg) {
  require_drive(cfg);
  DriveConfig bare = cfg;
  bare.detuning = bare.differential_zeeman = bare.gamma = 0.0;
  const DarkSpinSpace space(cfg.fg);
  const CMatrix h = build_hds(bare, false);
  const CMatrix kernel = null_space(h, 1e-10);
  // Combinations of kernel vectors with no excited-manifold weight.
  const CMatrix excited_part = kernel.bottomRows(space.excited_dim());
  CMatrix ground_kernel;
  if (excited_part.norm() == 0.0) {
    ground_kernel = kernel;
  } else {
    ground_kernel = kernel * null_space(excited_part, 1e-8);
  }
  if (ground_kernel.cols() != 2) {
    std::ostringstream os;
    os << "dark subspace has dimension " << ground_kernel.cols() << ", expected 2";
    throw NumericalError(os.str());
  }
  const CMatrix q = orthonormal_columns(ground_kernel.topRows(space.ground_dim()));
  DarkStatePair out;
  out.ds1 = q.col(0);
  out.ds2 = q.col(1);
  phase_fix(out.ds1);
  phase_fix(out.ds2);
  out.degenerate = solve_dark_angles(cfg.omega).degenerate;
  out.orthogonal = cartesian_rabi(cfg.omega).real_up_to_phase;
  return out;
}

DarkStatePair find_dark_states_rotation(const DriveConfig& cfg) {
  require_drive(cfg);
  const RootPair rp = solve_dark_angles(cfg.omega);
  const HalfInt F = cfg.fg;
  const double scale = cfg.omega.norm();
  for (const ScsAngles& a : {rp.a1, rp.a2}) {
    const double res = std::abs(rotated_minus_component(cfg.omega, a.phi, a.theta));
    if (!(res <= 1e-9 * scale)) {
      std::ostringstream os;
      os << "rotation method failed: residual " << res << " at (theta, phi) = (" << a.theta << ", "
         << a.phi << ")";
      throw NumericalError(os.str());
    }
  }
  DarkStatePair out;
  out.degenerate = rp.degenerate;
  out.orthogonal = cartesian_rabi(cfg.omega).real_up_to_phase;
  out.angles1 = rp.a1;
  if (rp.degenerate) {
    const CMatrix r = rotation_operator(rp.a1.phi, rp.a1.theta, 0.0, F);
    out.ds1 = r.col(0);
    out.ds2 = r.col(1);
    return out;
  }
  out.angles2 = rp.a2;
  out.ds1 = spin_coherent_state(rp.a1, F);
  const CVector v = spin_coherent_state(rp.a2, F);
  CVector w = v - out.ds1.dot(v) * out.ds1;
  out.ds2 = w / w.norm();
  return out;
}

double max_principal_angle(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw InvalidArgument("subspaces live in different spaces");
  const CMatrix qa = orthonormal_columns(a);
  const CMatrix qb = orthonormal_columns(b);
  const CMatrix resid = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<CMatrix> svd(resid);
  const double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::asin(std::min(1.0, s));
}

}  // namespace darkcat
