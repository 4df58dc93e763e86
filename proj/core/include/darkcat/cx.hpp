// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "darkcat/liouville.hpp"
#include "darkcat/ode.hpp"
#include "darkcat/ptm.hpp"
#include "darkcat/stabilization.hpp"

/// Rydberg-blockade controlled-X between two dark spin-cat qubits.
///
/// The target's Fg manifold is driven off-resonantly (detuning +-Delta_r for
/// sigma+-) to a Rydberg manifold Fr = Fg - 1, which produces an effective
/// field along the cat axis and rotates |0~> into |1~>. A control atom parked
/// in its Rydberg state shifts the target Rydberg manifold by V and blocks
/// the rotation.
namespace darkcat {

/// Target levels: Fg manifold, Fr manifold, then one untracked ground state
/// |g>_T collecting Rydberg decay.
class TargetSpace {
 public:
  explicit TargetSpace(HalfInt fg);

  HalfInt fg() const { return fg_; }
  HalfInt fr() const { return fr_; }
  int ground_dim() const { return fg_.dim(); }
  int rydberg_dim() const { return fr_.dim(); }
  int dim() const { return ground_dim() + rydberg_dim() + 1; }
  int ground_index(HalfInt m) const { return basis_index(fg_, m); }
  int rydberg_index(HalfInt m) const { return ground_dim() + basis_index(fr_, m); }
  int lost_index() const { return dim() - 1; }

  /// C^r_q = sum_m <Fg m; 1 q | Fr m+q> |Fr, m+q><Fg, m|.
  const CMatrix& raising(int q) const { return c_[q + 1]; }
  const CMatrix& rydberg_projector() const { return pr_; }
  CVector embed_ground(const CVector& v) const;
  /// Ground-manifold block of an operator, placed in a DarkSpinSpace-sized
  /// matrix (2Fg+1 + 2Fr+1) with the Rydberg block set to zero.
  CMatrix ground_block_for_projection(const CMatrix& rho) const;

 private:
  HalfInt fg_, fr_;
  CMatrix c_[3];
  CMatrix pr_;
};

enum class ControlState { kZero = 0, kRydberg = 1, kGround = 2 };

/// Control levels {|0~>_C, |r>_C = |Fr, -Fr>_C, |g>_C} tensored with the
/// target; index(c, k) = c * target.dim() + k.
class TwoAtomSpace {
 public:
  explicit TwoAtomSpace(HalfInt fg) : target_(fg) {}
  static constexpr int kControlDim = 3;

  const TargetSpace& target() const { return target_; }
  int dim() const { return kControlDim * target_.dim(); }
  int index(ControlState c, int k) const { return static_cast<int>(c) * target_.dim() + k; }
  /// control (3x3) tensor target (dim x dim).
  CMatrix kron(const CMatrix& control, const CMatrix& target) const;
  static CVector control_ket(ControlState c);

 private:
  TargetSpace target_;
};

enum class CxDecayModel {
  kBasic,     // target Rydberg decays back into the Fg manifold; no control decay
  kExtended,  // both atoms decay into their untracked ground states
};

enum class CxRamp { kNone, kTanh };

struct CxConfig {
  HalfInt fg = whole(4);
  double omega_r = 1.0;
  double delta_r = 2.0;
  double v = 100.0;
  double gamma_r = 1.0 / (240.0 * kPi);
  /// Gate time; 0 selects pi / mu.
  double duration = 0.0;
  CxRamp ramp = CxRamp::kTanh;
  double ramp_a = 5.0;
  int ramp_n = 4;
  CxDecayModel decay = CxDecayModel::kBasic;
  int n_re = 0;
  bool stabilize_after = true;
};

void validate(const CxConfig& cfg);

/// Effective rotation rate |Omega_r|^2 / (4 Delta_r) (1/Fg) (2Fg - 1) / (2Fg + 1).
double mu_effective(const CxConfig& cfg);
/// pi / mu.
double predicted_gate_time(const CxConfig& cfg);
double cx_duration(const CxConfig& cfg);

/// 1/2 + tanh(a cos(pi (2t/T - 1)^n)) / (2 tanh a), or 1 without a ramp.
double cx_envelope(const CxConfig& cfg, double t);

/// Target Hamiltonian (1/2) sum_{q=+-1} (e^{i q Delta_r t} Omega_r(t) C^r_q + h.c.)
/// plus V on the Rydberg manifold when blockaded.
CMatrix cx_target_hamiltonian(const CxConfig& cfg, const TargetSpace& space, double t, bool blockaded);
std::vector<JumpChannel> cx_target_decay(const CxConfig& cfg, const TargetSpace& space);

/// Full two-atom Hamiltonian and jump operators.
CMatrix cx_hamiltonian(const CxConfig& cfg, const TwoAtomSpace& space, double t);
std::vector<JumpChannel> cx_jumps(const CxConfig& cfg, const TwoAtomSpace& space);
/// Liouvillian of the two-atom model at time t. Dimension grows as
/// (3 (4 Fg + 1))^2; meant for small Fg.
Superoperator cx_generator(const CxConfig& cfg, const TwoAtomSpace& space, double t);

/// Logical basis of the target, |Fg, +-Fg>_x in the DarkSpinSpace layout.
LogicalBasis cx_target_logical_basis(HalfInt fg);

struct CxOutcome {
  /// Target PTM at a fixed control state, after the optional stabilization.
  Ptm ptm = Ptm::Identity();
  /// ptm times the inverse of the ideal action (X for control |0~>, identity for |r>).
  Ptm residual = Ptm::Identity();
  Infidelity infidelity;
  double duration = 0.0;
  /// Population remaining in the target Fg manifold, averaged over |0~>, |1~>.
  double retained = 1.0;
};

/// Evolves the four target E_m with the control held in |0~>_C or |r>_C.
CxOutcome simulate_cx(const CxConfig& cfg, ControlState control, const OdeOptions& opts = {});

/// Same evolution on the full two-atom space (slow; small Fg only).
CxOutcome simulate_cx_full(const CxConfig& cfg, ControlState control, const OdeOptions& opts = {});

struct PopulationTrace {
  std::vector<double> t;
  std::vector<double> p0, p1, pr;  // target |0~>, |1~>, Rydberg manifold
};

/// Target populations for the target starting in |0~>, no stabilization.
PopulationTrace cx_population_trace(const CxConfig& cfg, ControlState control, const std::vector<double>& times,
                                    const OdeOptions& opts = {});

/// Precession rate of the target Fg spin about z under a constant drive
/// without decay, starting from |0~>: least-squares slope of the unwrapped
/// azimuth of <F> over [0, 1.5 pi / mu]. A rotation by pi swaps |0~> and |1~>.
double measured_swap_rate(const CxConfig& cfg, const OdeOptions& opts = {});

struct MonitoredOutcome {
  /// Target-reduced fidelity <ideal|rho_T|ideal> averaged over target |0~>, |1~>.
  double fidelity = 0.0;
  /// Probability that a check found the control in |g>_C.
  double stop_probability = 0.0;
};

/// Gate split into n_re equal intervals with a projective check of |g>_C after
/// each; a detection turns the target lasers off for the remainder. Uses the
/// extended decay model and a constant drive, as the monitoring protocol does.
MonitoredOutcome monitored_cx(const CxConfig& cfg, ControlState control, const OdeOptions& opts = {});

struct TimeScanPoint {
  double duration = 0.0;
  CxOutcome outcome;
};

struct TimeScan {
  std::vector<TimeScanPoint> points;
  double t_opt = 0.0;
  CxOutcome best;
};

/// Scans the gate time over factors of pi / mu with control |0~>, then refines
/// the maximum of the residual trace by golden section.
TimeScan scan_gate_time(const CxConfig& cfg, const std::vector<double>& factors, const OdeOptions& opts = {});

}  // namespace darkcat
