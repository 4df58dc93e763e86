// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/cx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace darkcat {

TargetSpace::TargetSpace(HalfInt fg) : fg_(fg), fr_(fg - whole(1)) {
  if (fg.twice() < 2) throw InvalidArgument("CX target needs Fg >= 1");
  const int n = dim();
  for (int q = -1; q <= 1; ++q) {
    CMatrix c = CMatrix::Zero(n, n);
    for (int k = 0; k < ground_dim(); ++k) {
      const HalfInt m = basis_m(fg_, k);
      const HalfInt mr = m + whole(q);
      if (std::abs(mr.twice()) > fr_.twice()) continue;
      c(rydberg_index(mr), k) = clebsch_gordan(fg_, m, q, fr_, mr);
    }
    c_[q + 1] = c;
  }
  pr_ = CMatrix::Zero(n, n);
  pr_.block(ground_dim(), ground_dim(), rydberg_dim(), rydberg_dim()).setIdentity();
}

CVector TargetSpace::embed_ground(const CVector& v) const {
  if (v.size() != ground_dim()) throw InvalidArgument("ground vector dimension mismatch");
  CVector out = CVector::Zero(dim());
  out.head(ground_dim()) = v;
  return out;
}

CMatrix TargetSpace::ground_block_for_projection(const CMatrix& rho) const {
  const int ng = ground_dim(), n = ng + rydberg_dim();
  CMatrix out = CMatrix::Zero(n, n);
  out.topLeftCorner(ng, ng) = rho.topLeftCorner(ng, ng);
  return out;
}

CMatrix TwoAtomSpace::kron(const CMatrix& control, const CMatrix& target) const {
  return Eigen::kroneckerProduct(control, target).eval();
}

CVector TwoAtomSpace::control_ket(ControlState c) {
  return CVector::Unit(kControlDim, static_cast<int>(c));
}

void validate(const CxConfig& cfg) {
  if (cfg.fg.twice() < 2) throw InvalidArgument("CX needs Fg >= 1");
  if (!(cfg.omega_r >= 0.0)) throw InvalidArgument("omega_r must be non-negative");
  if (!(cfg.delta_r != 0.0) || !std::isfinite(cfg.delta_r)) throw InvalidArgument("delta_r must be nonzero");
  if (!(cfg.v >= 0.0)) throw InvalidArgument("blockade shift must be non-negative");
  if (!(cfg.gamma_r >= 0.0)) throw InvalidArgument("gamma_r must be non-negative");
  if (!(cfg.duration >= 0.0)) throw InvalidArgument("gate time must be non-negative");
  if (!(cfg.ramp_a > 0.0) || cfg.ramp_n < 1) throw InvalidArgument("ramp needs a > 0 and n >= 1");
  if (cfg.n_re < 0) throw InvalidArgument("n_re must be non-negative");
}

double mu_effective(const CxConfig& cfg) {
  validate(cfg);
  if (std::abs(cfg.omega_r / cfg.delta_r) >= 1.0) {
    throw InvalidArgument("the effective-field rate needs |omega_r / delta_r| < 1");
  }
  const double f = cfg.fg.value();
  return cfg.omega_r * cfg.omega_r / (4.0 * cfg.delta_r) / f * (2.0 * f - 1.0) / (2.0 * f + 1.0);
}

double predicted_gate_time(const CxConfig& cfg) {
  const double mu = mu_effective(cfg);
  if (mu == 0.0) throw InvalidArgument("no rotation without a drive");
  return kPi / std::abs(mu);
}

double cx_duration(const CxConfig& cfg) { return cfg.duration > 0.0 ? cfg.duration : predicted_gate_time(cfg); }

double cx_envelope(const CxConfig& cfg, double t) {
  if (cfg.ramp == CxRamp::kNone) return 1.0;
  const double T = cx_duration(cfg);
  const double x = std::pow(2.0 * t / T - 1.0, cfg.ramp_n);
  return 0.5 + std::tanh(cfg.ramp_a * std::cos(kPi * x)) / (2.0 * std::tanh(cfg.ramp_a));
}

CMatrix cx_target_hamiltonian(const CxConfig& cfg, const TargetSpace& space, double t, bool blockaded) {
  CMatrix h = CMatrix::Zero(space.dim(), space.dim());
  const double amp = cfg.omega_r == 0.0 ? 0.0 : cfg.omega_r * cx_envelope(cfg, t);
  for (int q : {-1, 1}) {
    const cplx w = std::exp(kI * (q * cfg.delta_r * t)) * amp;
    h += 0.5 * (w * space.raising(q) + std::conj(w) * space.raising(q).adjoint());
  }
  if (blockaded) h += cfg.v * space.rydberg_projector();
  return h;
}

std::vector<JumpChannel> cx_target_decay(const CxConfig& cfg, const TargetSpace& space) {
  std::vector<JumpChannel> out;
  if (cfg.gamma_r == 0.0) return out;
  if (cfg.decay == CxDecayModel::kBasic) {
    for (int q = -1; q <= 1; ++q) out.push_back({space.raising(q).adjoint(), cfg.gamma_r});
  } else {
    for (int k = 0; k < space.rydberg_dim(); ++k) {
      CMatrix l = CMatrix::Zero(space.dim(), space.dim());
      l(space.lost_index(), space.ground_dim() + k) = 1.0;
      out.push_back({l, cfg.gamma_r});
    }
  }
  return out;
}

namespace {

CMatrix control_op(ControlState row, ControlState col) {
  CMatrix c = CMatrix::Zero(TwoAtomSpace::kControlDim, TwoAtomSpace::kControlDim);
  c(static_cast<int>(row), static_cast<int>(col)) = 1.0;
  return c;
}

}  // namespace

CMatrix cx_hamiltonian(const CxConfig& cfg, const TwoAtomSpace& space, double t) {
  const TargetSpace& tg = space.target();
  const CMatrix id3 = CMatrix::Identity(TwoAtomSpace::kControlDim, TwoAtomSpace::kControlDim);
  return space.kron(id3, cx_target_hamiltonian(cfg, tg, t, false)) +
         cfg.v * space.kron(control_op(ControlState::kRydberg, ControlState::kRydberg), tg.rydberg_projector());
}

std::vector<JumpChannel> cx_jumps(const CxConfig& cfg, const TwoAtomSpace& space) {
  const TargetSpace& tg = space.target();
  const CMatrix id3 = CMatrix::Identity(TwoAtomSpace::kControlDim, TwoAtomSpace::kControlDim);
  std::vector<JumpChannel> out;
  for (const JumpChannel& ch : cx_target_decay(cfg, tg)) out.push_back({space.kron(id3, ch.op), ch.rate});
  if (cfg.decay == CxDecayModel::kExtended && cfg.gamma_r > 0.0) {
    const CMatrix idt = CMatrix::Identity(tg.dim(), tg.dim());
    out.push_back({space.kron(control_op(ControlState::kGround, ControlState::kRydberg), idt), cfg.gamma_r});
  }
  return out;
}

Superoperator cx_generator(const CxConfig& cfg, const TwoAtomSpace& space, double t) {
  return lindbladian(cx_hamiltonian(cfg, space, t), cx_jumps(cfg, space));
}

LogicalBasis cx_target_logical_basis(HalfInt fg) { return stabilization_logical_basis(fg); }

namespace {

// Control-diagonal blocks of the two-atom state: `held` is the block of the
// initial control state, `fallen` the |g>_C block fed by control decay.
struct Blocks {
  CMatrix held, fallen;
};

class BlockEvolver {
 public:
  BlockEvolver(const CxConfig& cfg, ControlState control)
      : cfg_(cfg), space_(cfg.fg), blockaded_(control == ControlState::kRydberg) {
    if (control == ControlState::kGround) throw InvalidArgument("control must start in |0~> or |r>");
    control_decay_ = blockaded_ && cfg.decay == CxDecayModel::kExtended ? cfg.gamma_r : 0.0;
    const int n = space_.dim(), ng = space_.ground_dim(), nr = space_.rydberg_dim();
    half_plus_ = 0.5 * space_.raising(1);
    half_minus_ = 0.5 * space_.raising(-1);
    static_free_ = CMatrix::Zero(n, n);
    for (const JumpChannel& ch : cx_target_decay(cfg, space_)) {
      static_free_ -= 0.5 * kI * ch.rate * ch.op.adjoint() * ch.op;
      // Every decay channel starts in the Rydberg manifold and lands in the
      // Fg manifold (basic) or on |g>_T (extended).
      const bool to_lost = cfg.decay == CxDecayModel::kExtended;
      const int row0 = to_lost ? space_.lost_index() : 0, rows = to_lost ? 1 : ng;
      jumps_.push_back({row0, std::sqrt(ch.rate) * ch.op.block(row0, ng, rows, nr)});
    }
    static_blockaded_ = static_free_ + cfg.v * space_.rydberg_projector();
  }

  const TargetSpace& space() const { return space_; }
  bool has_fallen_block() const { return control_decay_ > 0.0; }

  std::vector<Blocks> evolve(const Blocks& start, const std::vector<double>& times, const OdeOptions& opts) const {
    const int n = space_.dim(), ng = space_.ground_dim(), nr = space_.rydberg_dim();
    const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
    const int nb = has_fallen_block() ? 2 : 1;
    CVector y0(nb * n2);
    y0.head(n2) = vec(start.held);
    if (nb == 2) y0.tail(n2) = vec(start.fallen);
    CMatrix laser(n, n), heff(n, n), x(n, n);
    // Blocks stay Hermitian, so rho Heff^dag = (Heff rho)^dag.
    auto lindblad = [&](const CMatrix& stat, const Eigen::Map<const CMatrix>& rho, Eigen::Map<CMatrix>& out) {
      heff = laser + stat;
      x.noalias() = heff * rho;
      out = -kI * x + kI * x.adjoint();
      for (const auto& [row0, a] : jumps_) {
        const Eigen::Index rows = a.rows();
        out.block(row0, row0, rows, rows).noalias() += a * rho.block(ng, ng, nr, nr) * a.adjoint();
      }
    };
    auto rhs = [&](double t, ConstVecMap y, VecMap dy) {
      const double amp = cfg_.omega_r * cx_envelope(cfg_, t);
      const cplx wp = std::exp(kI * (cfg_.delta_r * t)) * amp;
      laser = wp * half_plus_ + std::conj(wp) * half_minus_;
      laser += laser.adjoint().eval();
      Eigen::Map<const CMatrix> a(y.data(), n, n);
      Eigen::Map<CMatrix> da(dy.data(), n, n);
      lindblad(blockaded_ ? static_blockaded_ : static_free_, a, da);
      if (nb == 2) {
        da -= control_decay_ * a;
        Eigen::Map<const CMatrix> b(y.data() + n2, n, n);
        Eigen::Map<CMatrix> db(dy.data() + n2, n, n);
        lindblad(static_free_, b, db);
        db += control_decay_ * a;
      }
    };
    const auto traj = integrate_ode(rhs, y0, times, opts);
    std::vector<Blocks> out;
    out.reserve(traj.size());
    for (const CVector& v : traj) {
      Blocks b;
      b.held = unvec(v.head(n2), n);
      b.fallen = nb == 2 ? unvec(v.tail(n2), n) : CMatrix::Zero(n, n);
      out.push_back(std::move(b));
    }
    return out;
  }

 private:
  CxConfig cfg_;
  TargetSpace space_;
  bool blockaded_;
  double control_decay_ = 0.0;
  CMatrix half_plus_, half_minus_;
  // Non-Hermitian static part -i/2 sum L^dag L, with and without the blockade shift.
  CMatrix static_free_, static_blockaded_;
  std::vector<std::pair<int, CMatrix>> jumps_;
};

CMatrix target_operator(const TargetSpace& space, const CMatrix& logical_op) {
  const int ng = space.ground_dim();
  CMatrix out = CMatrix::Zero(space.dim(), space.dim());
  out.topLeftCorner(ng, ng) = logical_op.topLeftCorner(ng, ng);
  return out;
}

CxOutcome finish_outcome(const CxConfig& cfg, ControlState control, const TargetSpace& space,
                         std::array<CMatrix, 4> images_target, double duration) {
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  const ConservedSet cs = conserved_analytic(cfg.fg);
  CxOutcome out;
  out.duration = duration;
  const int ng = space.ground_dim();
  out.retained = 0.5 * images_target[0].topLeftCorner(ng, ng).trace().real();
  std::array<CMatrix, 4> images;
  for (int m = 0; m < 4; ++m) {
    CMatrix rho = space.ground_block_for_projection(images_target[m]);
    if (cfg.stabilize_after) rho = embed_logical(project_logical(rho, cs), basis);
    images[m] = rho;
  }
  out.ptm = ptm_element_matrix(images, basis);
  out.residual = control == ControlState::kZero ? Ptm(out.ptm * pauli_x_ptm()) : out.ptm;
  out.infidelity = worst_case_infidelity(out.residual);
  return out;
}

}  // namespace

CxOutcome simulate_cx(const CxConfig& cfg, ControlState control, const OdeOptions& opts) {
  validate(cfg);
  const double T = cx_duration(cfg);
  const BlockEvolver ev(cfg, control);
  const TargetSpace& space = ev.space();
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  std::array<CMatrix, 4> images;
  for (int m = 0; m < 4; ++m) {
    Blocks start{target_operator(space, basis.e[m]), CMatrix::Zero(space.dim(), space.dim())};
    const Blocks end = ev.evolve(start, {0.0, T}, opts).back();
    images[m] = end.held + end.fallen;
  }
  return finish_outcome(cfg, control, space, images, T);
}

CxOutcome simulate_cx_full(const CxConfig& cfg, ControlState control, const OdeOptions& opts) {
  validate(cfg);
  if (control == ControlState::kGround) throw InvalidArgument("control must start in |0~> or |r>");
  const double T = cx_duration(cfg);
  const TwoAtomSpace space(cfg.fg);
  const TargetSpace& tg = space.target();
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  OperatorModel model;
  model.dim = space.dim();
  model.hamiltonian = [&](double t) { return cx_hamiltonian(cfg, space, t); };
  model.jumps = cx_jumps(cfg, space);
  const CMatrix pc = control_op(control, control);
  std::array<CMatrix, 4> images;
  for (int m = 0; m < 4; ++m) {
    const CMatrix rho0 = space.kron(pc, target_operator(tg, basis.e[m]));
    const CMatrix rho = evolve_operator(model, rho0, {0.0, T}, opts).back();
    // Partial trace over the control.
    CMatrix reduced = CMatrix::Zero(tg.dim(), tg.dim());
    for (int c = 0; c < TwoAtomSpace::kControlDim; ++c) reduced += rho.block(c * tg.dim(), c * tg.dim(), tg.dim(), tg.dim());
    images[m] = reduced;
  }
  return finish_outcome(cfg, control, tg, images, T);
}

PopulationTrace cx_population_trace(const CxConfig& cfg, ControlState control, const std::vector<double>& times,
                                    const OdeOptions& opts) {
  validate(cfg);
  const BlockEvolver ev(cfg, control);
  const TargetSpace& space = ev.space();
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  const CVector k0 = space.embed_ground(basis.ket0.head(space.ground_dim()));
  const CVector k1 = space.embed_ground(basis.ket1.head(space.ground_dim()));
  const Blocks start{k0 * k0.adjoint(), CMatrix::Zero(space.dim(), space.dim())};
  const auto traj = ev.evolve(start, times, opts);
  PopulationTrace out;
  out.t = times;
  for (const Blocks& b : traj) {
    const CMatrix rho = b.held + b.fallen;
    out.p0.push_back(k0.dot(rho * k0).real());
    out.p1.push_back(k1.dot(rho * k1).real());
    out.pr.push_back((space.rydberg_projector() * rho).trace().real());
  }
  return out;
}

double measured_swap_rate(const CxConfig& cfg_in, const OdeOptions& opts) {
  CxConfig cfg = cfg_in;
  cfg.ramp = CxRamp::kNone;
  cfg.gamma_r = 0.0;
  const double t_pi = predicted_gate_time(cfg);
  const int samples = 301;
  std::vector<double> times(samples);
  for (int k = 0; k < samples; ++k) times[k] = 1.5 * t_pi * k / (samples - 1);
  const BlockEvolver ev(cfg, ControlState::kZero);
  const TargetSpace& space = ev.space();
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  const int ng = space.ground_dim();
  const CVector k0 = space.embed_ground(basis.ket0.head(ng));
  const auto traj = ev.evolve({k0 * k0.adjoint(), CMatrix::Zero(space.dim(), space.dim())}, times, opts);
  // Azimuth of the Fg spin, unwrapped, then a least-squares slope.
  const SpinOps f = spin_operators(cfg.fg);
  std::vector<double> angle(samples);
  for (int k = 0; k < samples; ++k) {
    const auto rho = traj[k].held.topLeftCorner(ng, ng);
    double a = std::atan2((f.fy * rho).trace().real(), (f.fx * rho).trace().real());
    if (k > 0) a += 2 * kPi * std::round((angle[k - 1] - a) / (2 * kPi));
    angle[k] = a;
  }
  return std::abs(fit_linear_window(times, angle).slope);
}

MonitoredOutcome monitored_cx(const CxConfig& cfg_in, ControlState control, const OdeOptions& opts) {
  CxConfig cfg = cfg_in;
  cfg.decay = CxDecayModel::kExtended;
  cfg.ramp = CxRamp::kNone;
  validate(cfg);
  const double T = cx_duration(cfg);
  const BlockEvolver ev(cfg, control);
  const TargetSpace& space = ev.space();
  const int n = space.dim();
  const LogicalBasis basis = cx_target_logical_basis(cfg.fg);
  const ConservedSet cs = conserved_analytic(cfg.fg);
  const int ng = space.ground_dim();
  const std::array<CVector, 2> kets{basis.ket0, basis.ket1};
  const int intervals = std::max(1, cfg.n_re);

  MonitoredOutcome out;
  for (int sigma = 0; sigma < 2; ++sigma) {
    const CVector k = space.embed_ground(kets[sigma].head(ng));
    Blocks state{k * k.adjoint(), CMatrix::Zero(n, n)};
    CMatrix stopped = CMatrix::Zero(n, n);
    for (int i = 0; i < intervals; ++i) {
      state = ev.evolve(state, {T * i / intervals, T * (i + 1) / intervals}, opts).back();
      if (cfg.n_re > 0) {
        // Detection branch: lasers off, so its target Fg block is frozen from here on.
        out.stop_probability += 0.5 * state.fallen.trace().real();
        stopped += state.fallen;
        state.fallen.setZero();
      }
    }
    CMatrix rho = space.ground_block_for_projection(state.held + state.fallen + stopped);
    if (cfg.stabilize_after) rho = embed_logical(project_logical(rho, cs), basis);
    const CVector& ideal = control == ControlState::kZero ? kets[1 - sigma] : kets[sigma];
    out.fidelity += 0.5 * ideal.dot(rho * ideal).real();
  }
  return out;
}

TimeScan scan_gate_time(const CxConfig& cfg_in, const std::vector<double>& factors, const OdeOptions& opts) {
  if (factors.empty()) throw InvalidArgument("gate-time scan needs at least one factor");
  CxConfig cfg = cfg_in;
  const double t_pi = predicted_gate_time(cfg);
  TimeScan scan;
  auto eval = [&](double T) {
    cfg.duration = T;
    return simulate_cx(cfg, ControlState::kZero, opts);
  };
  std::size_t best = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    scan.points.push_back({factors[i] * t_pi, eval(factors[i] * t_pi)});
    if (scan.points[i].outcome.residual.trace() > scan.points[best].outcome.residual.trace()) best = i;
  }
  scan.t_opt = scan.points[best].duration;
  scan.best = scan.points[best].outcome;
  if (factors.size() < 3 || best == 0 || best + 1 == factors.size()) return scan;
  double lo = scan.points[best - 1].duration, hi = scan.points[best + 1].duration;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  CxOutcome o1 = eval(x1), o2 = eval(x2);
  while (hi - lo > 1e-3 * t_pi) {
    if (o1.residual.trace() > o2.residual.trace()) {
      hi = x2, x2 = x1, o2 = o1;
      x1 = hi - phi * (hi - lo);
      o1 = eval(x1);
    } else {
      lo = x1, x1 = x2, o1 = o2;
      x2 = lo + phi * (hi - lo);
      o2 = eval(x2);
    }
  }
  const CxOutcome& refined = o1.residual.trace() > o2.residual.trace() ? o1 : o2;
  if (refined.residual.trace() > scan.best.residual.trace()) {
    scan.best = refined;
    scan.t_opt = refined.duration;
  }
  return scan;
}

}  // namespace darkcat
