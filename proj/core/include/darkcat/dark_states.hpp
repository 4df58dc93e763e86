// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "darkcat/spin.hpp"
#include "darkcat/types.hpp"

namespace darkcat {

/// Spherical Rabi components (Omega^{+1}, Omega^0, Omega^{-1}).
struct SphericalRabi {
  cplx plus{0.0, 0.0};
  cplx zero{0.0, 0.0};
  cplx minus{0.0, 0.0};

  cplx operator[](int q) const { return q > 0 ? plus : (q == 0 ? zero : minus); }
  double norm() const { return std::sqrt(std::norm(plus) + std::norm(zero) + std::norm(minus)); }
};

struct CartesianRabi {
  cplx x, y, z;
  /// True when (x, y, z) is a real vector times one global phase.
  bool real_up_to_phase = false;
  /// Unit real direction; meaningful when real_up_to_phase holds.
  Eigen::Vector3d direction = Eigen::Vector3d::Zero();
};

CartesianRabi cartesian_rabi(const SphericalRabi& omega);

/// Ground manifold Fg coupled to an excited manifold Fe = Fg - 1.
///
/// The full space stacks the ground block (2Fg+1 states) on top of the excited
/// block (2Fe+1 states), each in descending-m order.
class DarkSpinSpace {
 public:
  explicit DarkSpinSpace(HalfInt fg);

  HalfInt fg() const { return fg_; }
  HalfInt fe() const { return fe_; }
  int ground_dim() const { return fg_.dim(); }
  int excited_dim() const { return fe_.dim(); }
  int dim() const { return fg_.dim() + fe_.dim(); }
  int ground_index(HalfInt m) const { return basis_index(fg_, m); }
  int excited_index(HalfInt m) const { return ground_dim() + basis_index(fe_, m); }

  /// C_q = sum_m <Fg m; 1 q | Fe m+q> |Fe, m+q><Fg, m|.
  const CMatrix& raising(int q) const { return c_[q + 1]; }
  const CMatrix& fgx() const { return fgx_; }
  const CMatrix& fgy() const { return fgy_; }
  const CMatrix& fgz() const { return fgz_; }
  const CMatrix& fex() const { return fex_; }
  const CMatrix& fez() const { return fez_; }
  const CMatrix& excited_projector() const { return pe_; }

  CVector embed_ground(const CVector& v) const;
  CVector embed_excited(const CVector& v) const;
  CMatrix embed_ground_operator(const CMatrix& op) const;

 private:
  HalfInt fg_, fe_;
  CMatrix c_[3];
  CMatrix fgx_, fgy_, fgz_, fex_, fez_, pe_;
};

struct DriveConfig {
  HalfInt fg = whole(1);
  SphericalRabi omega;
  double detuning = 0.0;           // overall detuning Delta
  double differential_zeeman = 0.0;  // delta
  double gamma = 0.0;              // spontaneous emission rate
};

/// Laser coupling (1/2) sum_q (conj(Omega^q) C_q + Omega^q C_q^dagger).
///
/// The Rabi components enter conjugated so that the dark states sit at the
/// polar and azimuthal angles of the Cartesian vector from cartesian_rabi().
CMatrix laser_coupling(const DarkSpinSpace& space, const SphericalRabi& omega);

/// -(Delta + i gamma/2) P_e - delta F_ez + laser coupling. The decay term is
/// included only when include_decay is set.
CMatrix build_hds(const DriveConfig& cfg, bool include_decay = true);

struct DarkStatePair {
  CVector ds1, ds2;  // ground-block vectors
  std::optional<ScsAngles> angles1, angles2;
  bool degenerate = false;
  bool orthogonal = false;
};

/// Null space of the undamped Hamiltonian restricted to ground support. Each
/// vector is phased so its largest component is real and positive.
DarkStatePair find_dark_states_null(const DriveConfig& cfg);

/// Coherent-state solution from rotating the drive frame until the rotated
/// Omega^{-1} component vanishes.
DarkStatePair find_dark_states_rotation(const DriveConfig& cfg);

/// Rotated-frame component tilde-Omega^{-1}(alpha, beta) that the rotation
/// method drives to zero.
cplx rotated_minus_component(const SphericalRabi& omega, double alpha, double beta);

/// Largest principal angle between the column spans of a and b.
double max_principal_angle(const CMatrix& a, const CMatrix& b);

}  // namespace darkcat
