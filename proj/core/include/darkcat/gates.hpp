// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "darkcat/dark_states.hpp"
#include "darkcat/liouville.hpp"
#include "darkcat/ode.hpp"
#include "darkcat/ptm.hpp"
#include "darkcat/stabilization.hpp"

/// Single-qubit logical operations driven by slow ramps of the laser angles.
namespace darkcat {

/// Omega^{+-1} = -+(Omega/sqrt 2) e^{+-i alpha} sin beta, Omega^0 = Omega cos beta.
/// The dark states sit at (beta, alpha) and (pi - beta, pi + alpha).
SphericalRabi drive_from_angles(double alpha, double beta, double omega);

enum class GateKind { kUz, kUx, kPrepPlus, kUxHolonomic };

const char* gate_kind_name(GateKind kind);

struct AngleSample {
  double alpha = 0.0, beta = 0.0;
  double alpha_dot = 0.0, beta_dot = 0.0;
};

struct RampProfile {
  GateKind kind = GateKind::kUz;
  double duration = 0.0;
  double omega = 1.0;
  /// Segment boundaries, 0 first and duration last.
  std::vector<double> breaks;
  /// Drive on segment seg (0-based); seg is taken as given so boundary
  /// evaluation uses the one-sided formulas of that segment.
  std::function<SphericalRabi(double t, int seg)> drive;
  /// Angle path; empty for amplitude-shaped ramps.
  std::function<AngleSample(double t, int seg)> angles;
  double beta1 = 0.0;  // latitude offset of the z-gate loop

  int segment_of(double t) const;
  SphericalRabi drive_at(double t) const { return drive(t, segment_of(t)); }
};

inline constexpr double kDefaultAlpha1 = 5.0 * kPi / 26.0;
inline constexpr double kDefaultBeta1 = 5.0 * kPi / 78.0;

/// Four-segment loop: tilt off the equator by beta1, sweep alpha to alpha1,
/// return to the equator, sweep back to alpha = 0.
RampProfile uz_profile(double duration, double omega, double alpha1 = kDefaultAlpha1,
                       double beta1 = kDefaultBeta1);
/// Logical rotation angle 2 Fg alpha1 sin(beta1) of the z-gate loop.
double uz_rotation_angle(HalfInt fg, double alpha1 = kDefaultAlpha1, double beta1 = kDefaultBeta1);

/// alpha = pi t / T on the equator.
RampProfile ux_profile(double duration, double omega);
/// PTM of the relabeled X gate: swapping the roles of |0~> and |1~>.
Ptm virtual_ux_ptm(const LogicalBasis& basis);

/// Counter-intuitive turn-on from |Fg, -Fg> to the +x cat. Omega^{+1} starts at 0.
RampProfile prep_plus_profile(double duration, double omega);

/// Three equal stages: collapse Omega^{-1} to zero, re-expand it with phase
/// e^{-2 i alpha_x}, then unwind the phase. Omega^{+1} = Omega/sqrt 2 throughout.
RampProfile ux_holonomic_profile(double alpha_x, double duration, double omega);

enum class CdForm { kNone, kGeneric, kPerSegment };

/// Counter-diabatic term. kGeneric uses (n x dn/dt) . F_g for the drive axis
/// n(alpha, beta); kPerSegment uses the per-segment closed forms of the z and x
/// gates. Amplitude-shaped profiles have no counter-diabatic term.
CMatrix counter_diabatic_term(const DarkSpinSpace& space, const RampProfile& profile, double t, int seg,
                              CdForm form);

struct GateSpec {
  GateKind kind = GateKind::kUz;
  HalfInt fg = whole(4);
  double duration = 1000.0;
  double omega = 1.0;
  CdForm cd = CdForm::kNone;
  bool stabilize_after = true;
  double alpha1 = kDefaultAlpha1;
  double beta1 = kDefaultBeta1;
  double alpha_x = kPi;
  double gamma = 0.0;  // excited-state decay during the ramp
};

RampProfile make_profile(const GateSpec& spec);

/// Ideal logical PTM family used to fit the residual channel. For the z gate
/// the family is the rotation with R[1][2] = +sin(a), so that alpha* is
/// positive for the loop orientation of uz_profile.
std::function<Ptm(double)> ideal_family(GateKind kind);

struct GateResult {
  Ptm ptm = Ptm::Identity();
  GateChannel channel;
  Infidelity infidelity;
  double nominal_angle = 0.0;
  /// State-preparation fidelity |<+~|rho|+~>|; zero for the other kinds.
  double prep_fidelity = 0.0;
  double leakage = 0.0;  // largest population outside the logical span before projection
};

/// Evolves the four logical operators (or |Fg, -Fg> for state preparation)
/// through the ramp, optionally with OU noise on F_gz, then applies the
/// stabilization projection when requested.
GateResult simulate_gate(const GateSpec& spec, const std::optional<OUNoise>& noise = std::nullopt,
                         const OdeOptions& opts = {});

/// Noiseless state at each requested time, from psi0 (ground or full vector).
std::vector<CVector> gate_state_trajectory(const GateSpec& spec, const CVector& psi0, const std::vector<double>& times,
                                           const OdeOptions& opts = {});

}  // namespace darkcat
