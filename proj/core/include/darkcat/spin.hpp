// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "darkcat/types.hpp"

/// Angular-momentum algebra on a single spin-F manifold.
///
/// Every vector and matrix uses the basis order m = +F, +F-1, ..., -F, so
/// index i holds the state with m = F - i. Rotations follow
/// R(a, b, c) = exp(-i a Fz) exp(-i b Fy) exp(-i c Fz), and the spin coherent
/// state |theta, phi> = R(phi, theta, 0)|F, F>. This differs from the Radcliffe
/// convention by the phase exp(-i F phi).
namespace darkcat {

struct SpinOps {
  CMatrix fx, fy, fz, fplus, fminus;
};

/// Polar angle theta in [0, pi] and azimuth phi.
struct ScsAngles {
  double theta = 0.0;
  double phi = 0.0;
};

int basis_index(HalfInt F, HalfInt m);
HalfInt basis_m(HalfInt F, int index);
CVector basis_state(HalfInt F, HalfInt m);

SpinOps spin_operators(HalfInt F);

/// Condon-Shortley <F1 m1; 1 q | F2 m2>. Returns 0 when a selection rule fails,
/// including m2 outside the F2 manifold; throws InvalidArgument when |m1| > F1.
double clebsch_gordan(HalfInt F1, HalfInt m1, int q, HalfInt F2, HalfInt m2);

CMatrix rotation_operator(double alpha, double beta, double gamma, HalfInt F);

CVector spin_coherent_state(ScsAngles angles, HalfInt F);

/// Eigenstate of Fx with eigenvalue m, defined as exp(-i pi/2 Fy)|F, m>.
CVector x_basis_state(HalfInt F, HalfInt m);

Eigen::Vector3d bloch_vector(ScsAngles angles);
/// Angle between the Bloch directions of two coherent states.
double bloch_angle(ScsAngles a, ScsAngles b);

/// Exact <a1|Fz^nz|a2>.
cplx scs_fz_power_element(int nz, ScsAngles a1, ScsAngles a2, HalfInt F);

/// <a1|Fz^nz|a1> - <a2|Fz^nz|a2>.
double scs_diag_differential(int nz, ScsAngles a1, ScsAngles a2, HalfInt F);

enum class ScsOffset { kPolar, kAzimuthal };

/// Leading-order |<a1|Fz^nz|a2>| for a2 displaced by eps from the antipode of
/// a1, either in theta (kPolar) or in phi (kAzimuthal).
double scs_offdiag_asymptotic(int nz, HalfInt F, double theta1, double eps, ScsOffset offset);

/// Leading-order diagonal differential for an antipodal pair: 2 (F cos theta1)^nz
/// for odd nz and 0 for even nz. Corrections are cos(theta1) O(F^(nz-1)).
double scs_diag_differential_asymptotic(int nz, HalfInt F, double theta1);

}  // namespace darkcat
