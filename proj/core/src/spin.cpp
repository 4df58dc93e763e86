// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/spin.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace darkcat {

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9) {
    throw InvalidArgument("not a half-integer: " + std::to_string(value));
  }
  return HalfInt(static_cast<int>(rounded));
}

std::string HalfInt::str() const {
  std::ostringstream os;
  if (is_integer()) {
    os << twice_ / 2;
  } else {
    os << twice_ << "/2";
  }
  return os.str();
}

namespace {

void check_spin(HalfInt F) {
  if (F.twice() < 0) throw InvalidArgument("negative spin " + F.str());
}

}  // namespace

int basis_index(HalfInt F, HalfInt m) {
  check_spin(F);
  const int diff = F.twice() - m.twice();
  if (diff < 0 || diff > 2 * F.twice() || diff % 2 != 0) {
    throw InvalidArgument("m = " + m.str() + " not in manifold F = " + F.str());
  }
  return diff / 2;
}

HalfInt basis_m(HalfInt F, int index) { return HalfInt::from_twice(F.twice() - 2 * index); }

CVector basis_state(HalfInt F, HalfInt m) {
  CVector v = CVector::Zero(F.dim());
  v(basis_index(F, m)) = 1.0;
  return v;
}

SpinOps spin_operators(HalfInt F) {
  check_spin(F);
  const int d = F.dim();
  SpinOps ops;
  ops.fz = CMatrix::Zero(d, d);
  ops.fplus = CMatrix::Zero(d, d);
  const double f = F.value();
  for (int i = 0; i < d; ++i) {
    const double m = basis_m(F, i).value();
    ops.fz(i, i) = m;
    if (i > 0) ops.fplus(i - 1, i) = std::sqrt(f * (f + 1.0) - m * (m + 1.0));
  }
  ops.fminus = ops.fplus.adjoint();
  ops.fx = 0.5 * (ops.fplus + ops.fminus);
  ops.fy = (ops.fplus - ops.fminus) / (2.0 * kI);
  return ops;
}

double clebsch_gordan(HalfInt F1, HalfInt m1, int q, HalfInt F2, HalfInt m2) {
  check_spin(F1);
  check_spin(F2);
  const auto in_range = [](HalfInt F, HalfInt m) {
    return std::abs(m.twice()) <= F.twice() && (F.twice() - m.twice()) % 2 == 0;
  };
  if (!in_range(F1, m1)) throw InvalidArgument("projection " + m1.str() + " out of range for spin " + F1.str());
  if ((F2.twice() - m2.twice()) % 2 != 0) throw InvalidArgument("projection parity does not match spin");
  // A coupled projection beyond F2 is a selection-rule zero, not an error.
  if (std::abs(m2.twice()) > F2.twice()) return 0.0;
  if (std::abs(q) > 1 || m2.twice() != m1.twice() + 2 * q) return 0.0;
  const int dj = F2.twice() - F1.twice();
  const double j1 = F1.value();
  const double m = m2.value();
  // Closed forms for coupling to rank 1, m being the coupled projection.
  if (dj == 2) {
    const double den = (2 * j1 + 1) * (2 * j1 + 2);
    switch (q) {
      case 1: return std::sqrt((j1 + m) * (j1 + m + 1) / den);
      case 0: return std::sqrt((j1 - m + 1) * (j1 + m + 1) / ((2 * j1 + 1) * (j1 + 1)));
      default: return std::sqrt((j1 - m) * (j1 - m + 1) / den);
    }
  }
  if (dj == 0 && F1.twice() > 0) {
    const double den = 2 * j1 * (j1 + 1);
    switch (q) {
      case 1: return -std::sqrt((j1 + m) * (j1 - m + 1) / den);
      case 0: return m / std::sqrt(j1 * (j1 + 1));
      default: return std::sqrt((j1 - m) * (j1 + m + 1) / den);
    }
  }
  if (dj == -2) {
    const double den = 2 * j1 * (2 * j1 + 1);
    switch (q) {
      case 1: return std::sqrt((j1 - m) * (j1 - m + 1) / den);
      case 0: return -std::sqrt((j1 - m) * (j1 + m) / (j1 * (2 * j1 + 1)));
      default: return std::sqrt((j1 + m + 1) * (j1 + m) / den);
    }
  }
  return 0.0;
}

namespace {

// exp(-i beta Fy) from the spectral decomposition of Fy. The eigenvalues are
// snapped to the exact values m = -F..F to keep the phases accurate.
CMatrix fy_rotation(double beta, HalfInt F) {
  const SpinOps ops = spin_operators(F);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(ops.fy);
  const int d = F.dim();
  CVector phases(d);
  for (int k = 0; k < d; ++k) {
    const double exact = 0.5 * (2 * k - F.twice());
    phases(k) = std::exp(-kI * beta * exact);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix rotation_operator(double alpha, double beta, double gamma, HalfInt F) {
  check_spin(F);
  const int d = F.dim();
  CVector za(d), zc(d);
  for (int i = 0; i < d; ++i) {
    const double m = basis_m(F, i).value();
    za(i) = std::exp(-kI * alpha * m);
    zc(i) = std::exp(-kI * gamma * m);
  }
  return za.asDiagonal() * fy_rotation(beta, F) * zc.asDiagonal();
}

CVector spin_coherent_state(ScsAngles angles, HalfInt F) {
  return rotation_operator(angles.phi, angles.theta, 0.0, F).col(0);
}

CVector x_basis_state(HalfInt F, HalfInt m) {
  return rotation_operator(0.0, 0.5 * kPi, 0.0, F).col(basis_index(F, m));
}

Eigen::Vector3d bloch_vector(ScsAngles a) {
  return {std::sin(a.theta) * std::cos(a.phi), std::sin(a.theta) * std::sin(a.phi),
          std::cos(a.theta)};
}

double bloch_angle(ScsAngles a, ScsAngles b) {
  const Eigen::Vector3d u = bloch_vector(a);
  const Eigen::Vector3d v = bloch_vector(b);
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

namespace {

CVector fz_power_apply(int nz, const CVector& v, HalfInt F) {
  if (nz < 0) throw InvalidArgument("negative Fz power");
  CVector out = v;
  for (int i = 0; i < F.dim(); ++i) out(i) *= std::pow(basis_m(F, i).value(), nz);
  return out;
}

}  // namespace

cplx scs_fz_power_element(int nz, ScsAngles a1, ScsAngles a2, HalfInt F) {
  const CVector u = spin_coherent_state(a1, F);
  const CVector v = spin_coherent_state(a2, F);
  return u.dot(fz_power_apply(nz, v, F));
}

double scs_diag_differential(int nz, ScsAngles a1, ScsAngles a2, HalfInt F) {
  return (scs_fz_power_element(nz, a1, a1, F) - scs_fz_power_element(nz, a2, a2, F)).real();
}

double scs_offdiag_asymptotic(int nz, HalfInt F, double theta1, double eps, ScsOffset offset) {
  const int n2f = F.twice();
  if (nz < 0 || nz > n2f) throw InvalidArgument("Fz power outside [0, 2F]");
  // (2F)!/(2F - nz)!
  double falling = 1.0;
  for (int k = 0; k < nz; ++k) falling *= n2f - k;
  const int k = offset == ScsOffset::kPolar ? nz : n2f;
  return std::pow(std::abs(eps), n2f - nz) * std::pow(2.0, -n2f) * falling *
         std::pow(std::abs(std::sin(theta1)), k);
}

double scs_diag_differential_asymptotic(int nz, HalfInt F, double theta1) {
  // Even powers are symmetric under the antipodal map, so their differential vanishes identically.
  if (nz % 2 == 0) return 0.0;
  return 2.0 * std::pow(F.value() * std::cos(theta1), nz);
}

}  // namespace darkcat
