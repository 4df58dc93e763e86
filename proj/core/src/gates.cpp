// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/gates.hpp"

#include <algorithm>
#include <cmath>

namespace darkcat {

SphericalRabi drive_from_angles(double alpha, double beta, double omega) {
  const double s = omega / std::sqrt(2.0) * std::sin(beta);
  return {-s * std::exp(kI * alpha), omega * std::cos(beta), s * std::exp(-kI * alpha)};
}

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kUz: return "uz";
    case GateKind::kUx: return "ux";
    case GateKind::kPrepPlus: return "prep_plus";
    case GateKind::kUxHolonomic: return "ux_holonomic";
  }
  return "unknown";
}

int RampProfile::segment_of(double t) const {
  const auto it = std::upper_bound(breaks.begin() + 1, breaks.end() - 1, t);
  return static_cast<int>(it - breaks.begin()) - 1;
}

namespace {

void check_ramp(double duration, double omega) {
  if (!(duration > 0.0)) throw InvalidArgument("ramp duration must be positive");
  if (!(omega > 0.0)) throw InvalidArgument("ramp Rabi frequency must be positive");
}

RampProfile angle_profile(GateKind kind, double duration, double omega, std::vector<double> breaks,
                          std::function<AngleSample(double, int)> angles) {
  RampProfile p;
  p.kind = kind;
  p.duration = duration;
  p.omega = omega;
  p.breaks = std::move(breaks);
  p.angles = std::move(angles);
  p.drive = [angles = p.angles, omega](double t, int seg) {
    const AngleSample a = angles(t, seg);
    return drive_from_angles(a.alpha, a.beta, omega);
  };
  return p;
}

}  // namespace

RampProfile uz_profile(double duration, double omega, double alpha1, double beta1) {
  check_ramp(duration, omega);
  const double T = duration;
  auto angles = [=](double t, int seg) {
    const double x = t / T;
    AngleSample a;
    switch (seg) {
      case 0:
        a.beta = kPi / 2 - beta1 * (1.0 + std::sin(4 * kPi * x - kPi / 2));
        a.beta_dot = -beta1 * std::cos(4 * kPi * x - kPi / 2) * 4 * kPi / T;
        break;
      case 1:
        a.alpha = alpha1 * 8.0 / 3.0 * (x - 1.0 / 8.0);
        a.alpha_dot = alpha1 * 8.0 / 3.0 / T;
        a.beta = kPi / 2 - beta1;
        break;
      case 2:
        a.alpha = alpha1;
        a.beta = kPi / 2 - beta1 * (1.0 + std::sin(4 * kPi * x - kPi));
        a.beta_dot = -beta1 * std::cos(4 * kPi * x - kPi) * 4 * kPi / T;
        break;
      default:
        a.alpha = -alpha1 * 8.0 / 3.0 * (x - 1.0);
        a.alpha_dot = -alpha1 * 8.0 / 3.0 / T;
        a.beta = kPi / 2;
    }
    return a;
  };
  RampProfile p = angle_profile(GateKind::kUz, T, omega, {0.0, T / 8, T / 2, 5 * T / 8, T}, angles);
  p.beta1 = beta1;
  return p;
}

double uz_rotation_angle(HalfInt fg, double alpha1, double beta1) {
  return 2.0 * fg.value() * alpha1 * std::sin(beta1);
}

RampProfile ux_profile(double duration, double omega) {
  check_ramp(duration, omega);
  const double T = duration;
  return angle_profile(GateKind::kUx, T, omega, {0.0, T}, [T](double t, int) {
    AngleSample a;
    a.alpha = kPi * t / T;
    a.alpha_dot = kPi / T;
    a.beta = kPi / 2;
    return a;
  });
}

Ptm virtual_ux_ptm(const LogicalBasis& basis) {
  // Relabeling |0~> <-> |1~> is conjugation by the swap permutation.
  const int n = basis.dim();
  const CMatrix swap = CMatrix::Identity(n, n) - basis.e[0] + basis.e[1];
  return compute_ptm([&](const CMatrix& m) { return CMatrix(swap * m * swap.adjoint()); }, basis);
}

RampProfile prep_plus_profile(double duration, double omega) {
  check_ramp(duration, omega);
  const double T = duration;
  RampProfile p;
  p.kind = GateKind::kPrepPlus;
  p.duration = T;
  p.omega = omega;
  p.breaks = {0.0, T};
  p.drive = [=](double t, int) {
    const double c = std::cos(kPi / 2 * t / T);
    const double d = std::sqrt(2.0 * (1.0 + c * c));
    return SphericalRabi{-omega * (1.0 - c) / d, 0.0, omega * (1.0 + c) / d};
  };
  return p;
}

RampProfile ux_holonomic_profile(double alpha_x, double duration, double omega) {
  check_ramp(duration, omega);
  const double T = duration;
  const double amp = omega / std::sqrt(2.0);
  RampProfile p;
  p.kind = GateKind::kUxHolonomic;
  p.duration = T;
  p.omega = omega;
  p.breaks = {0.0, T / 3, 2 * T / 3, T};
  p.drive = [=](double t, int seg) {
    const double x = 3.0 * t / T;
    auto envelope = [](double y) { return std::pow(std::cos(kPi * y / 2), 2); };
    cplx minus;
    if (seg == 0) {
      minus = -amp * envelope(x);
    } else if (seg == 1) {
      minus = -amp * std::exp(-2.0 * kI * alpha_x) * (1.0 - envelope(x - 1.0));
    } else {
      const double s = std::sin(kPi * (x - 2.0) / 2);
      minus = -amp * std::exp(-2.0 * kI * alpha_x * (1.0 - s * s));
    }
    return SphericalRabi{amp, 0.0, minus};
  };
  return p;
}

CMatrix counter_diabatic_term(const DarkSpinSpace& space, const RampProfile& profile, double t, int seg,
                              CdForm form) {
  const int n = space.dim();
  if (form == CdForm::kNone) return CMatrix::Zero(n, n);
  if (!profile.angles) throw InvalidArgument("counter-diabatic terms need an angle-parameterized ramp");
  const AngleSample a = profile.angles(t, seg);
  if (form == CdForm::kGeneric) {
    const double ca = std::cos(a.alpha), sa = std::sin(a.alpha), cb = std::cos(a.beta), sb = std::sin(a.beta);
    const Eigen::Vector3d axis(ca * sb, sa * sb, cb);
    const Eigen::Vector3d rate = a.alpha_dot * Eigen::Vector3d(-sa * sb, ca * sb, 0.0) +
                                 a.beta_dot * Eigen::Vector3d(ca * cb, sa * cb, -sb);
    const Eigen::Vector3d w = axis.cross(rate);
    return w.x() * space.fgx() + w.y() * space.fgy() + w.z() * space.fgz();
  }
  if (profile.kind == GateKind::kUx) return a.alpha_dot * space.fgz();
  if (profile.kind != GateKind::kUz) throw InvalidArgument("no closed-form counter-diabatic term for this ramp");
  const double s1 = std::sin(profile.beta1), c1 = std::cos(profile.beta1);
  switch (seg) {
    case 0: return a.beta_dot * space.fgy();
    case 1:
      return a.alpha_dot * (std::cos(a.alpha) * s1 * c1 * space.fgx() + std::sin(a.alpha) * s1 * c1 * space.fgy() +
                            std::sin(a.alpha) * c1 * space.fgz());
    case 2: return a.beta_dot * space.fgx();
    default: return a.alpha_dot * space.fgz();
  }
}

RampProfile make_profile(const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::kUz: return uz_profile(spec.duration, spec.omega, spec.alpha1, spec.beta1);
    case GateKind::kUx: return ux_profile(spec.duration, spec.omega);
    case GateKind::kPrepPlus: return prep_plus_profile(spec.duration, spec.omega);
    case GateKind::kUxHolonomic: return ux_holonomic_profile(spec.alpha_x, spec.duration, spec.omega);
  }
  throw InvalidArgument("unknown gate kind");
}

std::function<Ptm(double)> ideal_family(GateKind kind) {
  switch (kind) {
    // The loop is traversed so that X rotates toward -Y; a positive angle keeps R[1][2] = +sin(a).
    case GateKind::kUz: return [](double a) -> Ptm { return ideal_z_rotation_ptm(-a); };
    // The equatorial sweep swaps the cat legs; the relative phase it leaves is a z rotation.
    case GateKind::kUx: return [](double a) -> Ptm { return ideal_z_rotation_ptm(a) * pauli_x_ptm(); };
    case GateKind::kUxHolonomic: return ideal_x_rotation_ptm;
    case GateKind::kPrepPlus: return [](double) -> Ptm { return Ptm::Identity(); };
  }
  throw InvalidArgument("unknown gate kind");
}

namespace {

double nominal_angle(const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::kUz: return uz_rotation_angle(spec.fg, spec.alpha1, spec.beta1);
    case GateKind::kUxHolonomic: return spec.fg.is_integer() ? -spec.alpha_x : spec.alpha_x;
    default: return 0.0;
  }
}

struct GateModel {
  DarkSpinSpace space;
  RampProfile profile;
  CdForm cd;

  explicit GateModel(const GateSpec& spec) : space(spec.fg), profile(make_profile(spec)), cd(spec.cd) {
    if (cd != CdForm::kNone && !profile.angles) throw InvalidArgument("counter-diabatic driving needs an angle ramp");
  }

  CMatrix hamiltonian(double t, int seg) const {
    CMatrix h = laser_coupling(space, profile.drive(t, seg));
    if (cd != CdForm::kNone) h += counter_diabatic_term(space, profile, t, seg, cd);
    return h;
  }
};

}  // namespace

std::vector<CVector> gate_state_trajectory(const GateSpec& spec, const CVector& psi0, const std::vector<double>& times,
                                           const OdeOptions& opts) {
  const GateModel model(spec);
  CVector start = psi0;
  if (psi0.size() == model.space.ground_dim()) start = model.space.embed_ground(psi0);
  if (start.size() != model.space.dim()) throw InvalidArgument("initial state dimension mismatch");
  const auto traj = evolve_unitary_piecewise([&](double t, int k) { return model.hamiltonian(t, k); },
                                             model.profile.breaks, start, times, opts);
  std::vector<CVector> out;
  out.reserve(traj.size());
  for (const CMatrix& m : traj) out.push_back(m.col(0));
  return out;
}

GateResult simulate_gate(const GateSpec& spec, const std::optional<OUNoise>& noise, const OdeOptions& opts) {
  if (!(spec.gamma >= 0.0)) throw InvalidArgument("gate decay rate must be non-negative");
  const GateModel model(spec);
  const DarkSpinSpace& space = model.space;
  const LogicalBasis basis = stabilization_logical_basis(spec.fg);
  const ConservedSet cs = conserved_analytic(spec.fg);
  const std::vector<double> times{0.0, spec.duration};
  auto h = [&](double t, int k) { return model.hamiltonian(t, k); };

  StabilizationConfig decay_cfg;
  decay_cfg.fg = spec.fg;
  decay_cfg.gamma = spec.gamma;
  OperatorModel om;
  om.dim = space.dim();
  if (spec.gamma > 0.0) om.jumps = stabilization_decay(decay_cfg);
  if (noise) {
    om.noise_op = space.fgz();
    om.noise = *noise;
  }
  const bool unitary = !noise && spec.gamma == 0.0;

  // Columns of u0 are evolved as kets; everything else goes through the operator form.
  auto evolve_kets = [&](const CMatrix& u0) {
    return evolve_unitary_piecewise(h, model.profile.breaks, u0, times, opts).back();
  };
  auto evolve_op = [&](const CMatrix& rho0) {
    return evolve_operator_piecewise(om, h, model.profile.breaks, rho0, times, opts).back();
  };
  auto finish = [&](const CMatrix& rho) -> CMatrix {
    return spec.stabilize_after ? embed_logical(project_logical(rho, cs), basis) : rho;
  };
  const CMatrix logical_proj = basis.e[0];
  auto leakage_of = [&](const CMatrix& rho) {
    return std::abs(rho.trace() - (logical_proj * rho).trace());
  };

  GateResult res;
  res.nominal_angle = nominal_angle(spec);
  if (spec.kind == GateKind::kPrepPlus) {
    const CVector start = space.embed_ground(basis_state(spec.fg, -spec.fg));
    CMatrix rho;
    if (unitary) {
      const CVector psi = evolve_kets(start).col(0);
      rho = psi * psi.adjoint();
    } else {
      rho = evolve_op(start * start.adjoint());
    }
    res.leakage = leakage_of(rho);
    const CVector plus = (basis.ket0 + basis.ket1) / std::sqrt(2.0);
    res.prep_fidelity = plus.dot(finish(rho) * plus).real();
    return res;
  }

  std::array<CMatrix, 4> images;
  if (unitary) {
    CMatrix kets(space.dim(), 2);
    kets << basis.ket0, basis.ket1;
    const CMatrix v = evolve_kets(kets);
    // E_m = sum_ij c_ij |i~><j~| maps to V c V^dag.
    for (int m = 0; m < 4; ++m) {
      Eigen::Matrix2cd c;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c(i, j) = kets.col(i).dot(basis.e[m] * kets.col(j));
      images[m] = v * c * v.adjoint();
    }
  } else {
    for (int m = 0; m < 4; ++m) images[m] = evolve_op(basis.e[m]);
  }
  res.leakage = std::max(leakage_of(0.5 * (images[0] + images[3])), leakage_of(0.5 * (images[0] - images[3])));
  for (CMatrix& img : images) img = finish(img);
  res.ptm = ptm_element_matrix(images, basis);
  res.channel = gate_error_channel(res.ptm, ideal_family(spec.kind));
  res.infidelity = worst_case_infidelity(res.channel.residual);
  return res;
}

}  // namespace darkcat
