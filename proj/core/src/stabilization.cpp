// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/stabilization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

namespace darkcat {

namespace mp = boost::multiprecision;

SphericalRabi stabilization_drive(double omega) {
  const double r = std::sqrt(2.0) * omega;
  return {-r, 0.0, r};
}

LogicalBasis stabilization_logical_basis(HalfInt fg) {
  const DarkSpinSpace space(fg);
  return LogicalBasis(space.embed_ground(x_basis_state(fg, fg)), space.embed_ground(x_basis_state(fg, -fg)));
}

CMatrix stabilization_hamiltonian(const StabilizationConfig& cfg) {
  DriveConfig d;
  d.fg = cfg.fg;
  d.omega = stabilization_drive(cfg.omega);
  d.detuning = cfg.detuning;
  d.differential_zeeman = cfg.differential_zeeman;
  return build_hds(d, false);
}

std::vector<JumpChannel> stabilization_decay(const StabilizationConfig& cfg) {
  const DarkSpinSpace space(cfg.fg);
  std::vector<JumpChannel> out;
  for (int q = -1; q <= 1; ++q) {
    if (q == 0 && cfg.polarization == Polarization::kSigmaPmOnly) continue;
    out.push_back({space.raising(q).adjoint(), cfg.gamma});
  }
  return out;
}

Superoperator stabilization_lindbladian(const StabilizationConfig& cfg) {
  if (!(cfg.omega > 0.0) || !(cfg.gamma >= 0.0)) throw InvalidArgument("stabilization needs omega > 0, gamma >= 0");
  return lindbladian(stabilization_hamiltonian(cfg), stabilization_decay(cfg));
}

double ConservedSet::a_at(HalfInt m) const {
  const int idx = (m.twice() - (2 - fg.twice())) / 2;
  if (std::abs(m.twice()) > fg.twice() - 2 || (fg.twice() - m.twice()) % 2 != 0) {
    throw InvalidArgument("a_m defined only for |m| <= Fg - 1");
  }
  return a.at(idx);
}

const CMatrix& ConservedSet::j(int mu, int nu) const {
  if (mu == 0) return nu == 0 ? j00 : j01;
  return nu == 0 ? j10 : j11;
}

namespace {

// Exact G(m) for m = -Fg, ..., Fg - 1.
std::vector<mp::cpp_rational> g_values(HalfInt fg) {
  const int tf = fg.twice();
  std::vector<mp::cpp_rational> g{mp::cpp_rational(1)};
  for (int tm = 2 - tf; tm <= tf - 2; tm += 2) {
    const mp::cpp_int num = mp::cpp_int(tf - tm + 2) * (tf - tm);
    const mp::cpp_int den = mp::cpp_int(tf + tm + 2) * (tf + tm);
    g.push_back(g.back() * mp::cpp_rational(num, den));
  }
  return g;
}

mp::cpp_int factorial(int n) {
  mp::cpp_int r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

CVector ground_x(const DarkSpinSpace& s, HalfInt m) { return s.embed_ground(x_basis_state(s.fg(), m)); }
CVector excited_x(const DarkSpinSpace& s, HalfInt m) { return s.embed_excited(x_basis_state(s.fe(), m)); }

void require_fg(HalfInt fg) {
  if (fg.twice() < 2) throw InvalidArgument("stabilization needs Fg >= 1, got " + fg.str());
}

}  // namespace

double g_sum(HalfInt fg) {
  require_fg(fg);
  mp::cpp_rational total = 0;
  for (const auto& g : g_values(fg)) total += g;
  return static_cast<double>(total);
}

double g_sum_closed_form(HalfInt fg) {
  require_fg(fg);
  const int tf = fg.twice();
  return static_cast<double>(mp::cpp_rational(factorial(2 * tf), factorial(tf + 1) * factorial(tf)));
}

std::vector<double> a_coefficients(HalfInt fg) {
  require_fg(fg);
  const auto g = g_values(fg);
  mp::cpp_rational total = 0;
  for (const auto& v : g) total += v;
  std::vector<double> a;
  mp::cpp_rational partial = g[0];
  for (std::size_t k = 1; k < g.size(); ++k) {
    a.push_back(static_cast<double>(partial / total));
    partial += g[k];
  }
  return a;
}

ConservedSet conserved_analytic(HalfInt fg) {
  require_fg(fg);
  const DarkSpinSpace space(fg);
  const int n = space.dim();
  ConservedSet cs;
  cs.fg = fg;
  cs.a = a_coefficients(fg);
  const CVector z0 = ground_x(space, fg), z1 = ground_x(space, -fg);
  cs.j00 = z0 * z0.adjoint();
  for (int tm = 2 - fg.twice(), k = 0; tm <= fg.twice() - 2; tm += 2, ++k) {
    const HalfInt m = half(tm);
    const CVector g = ground_x(space, m), e = excited_x(space, m);
    cs.j00 += cs.a[k] * (g * g.adjoint() + e * e.adjoint());
  }
  cs.j11 = CMatrix::Identity(n, n) - cs.j00;
  cs.j01 = z0 * z1.adjoint();
  cs.j10 = z1 * z0.adjoint();
  cs.source = ConservedSource::kAnalytic;
  return cs;
}

ConservedSet conserved_numeric(const Superoperator& l, HalfInt fg) {
  require_fg(fg);
  const DarkSpinSpace space(fg);
  const int n = space.dim();
  if (l.dim != n) throw InvalidArgument("Lindbladian does not act on the Fg / Fe space");
  Eigen::BDCSVD<CMatrix> svd(l.matrix.adjoint(), Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-10 * s(0)) ++rank;
  }
  const Eigen::Index nullity = s.size() - rank;
  if (nullity != 4) {
    std::ostringstream os;
    os << "left null space has dimension " << nullity << ", expected 4";
    throw NumericalError(os.str());
  }
  const CMatrix k = svd.matrixV().rightCols(4);
  const LogicalBasis basis = stabilization_logical_basis(fg);
  const std::array<CVector, 2> kets{basis.ket0, basis.ket1};
  CMatrix steady(static_cast<Eigen::Index>(n) * n, 4);
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) steady.col(2 * mu + nu) = vec(kets[mu] * kets[nu].adjoint());
  // J = K C with J^dag S = 1, i.e. C = (K^dag S)^{-dag}.
  const CMatrix overlap = k.adjoint() * steady;
  const CMatrix c = overlap.inverse().adjoint();
  const CMatrix j = k * c;
  ConservedSet cs;
  cs.fg = fg;
  cs.j00 = unvec(j.col(0), n);
  cs.j01 = unvec(j.col(1), n);
  cs.j10 = unvec(j.col(2), n);
  cs.j11 = unvec(j.col(3), n);
  for (int tm = 2 - fg.twice(); tm <= fg.twice() - 2; tm += 2) {
    const CVector g = ground_x(space, half(tm));
    cs.a.push_back(g.dot(cs.j00 * g).real());
  }
  cs.source = ConservedSource::kNumeric;
  return cs;
}

Eigen::Matrix2cd project_logical(const CMatrix& rho, const ConservedSet& cs) {
  if (rho.rows() != cs.j00.rows() || rho.cols() != cs.j00.cols()) {
    throw InvalidArgument("state and conserved set differ in dimension");
  }
  Eigen::Matrix2cd c;
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) c(mu, nu) = (cs.j(mu, nu).adjoint() * rho).trace();
  return c;
}

CMatrix embed_logical(const Eigen::Matrix2cd& c, const LogicalBasis& basis) {
  const std::array<const CVector*, 2> kets{&basis.ket0, &basis.ket1};
  CMatrix out = CMatrix::Zero(basis.dim(), basis.dim());
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu) out += c(mu, nu) * (*kets[mu]) * kets[nu]->adjoint();
  return out;
}

std::vector<GapPoint> dissipative_gap_scan(const std::vector<StabilizationConfig>& grid) {
  std::vector<GapPoint> out;
  out.reserve(grid.size());
  for (const StabilizationConfig& cfg : grid) {
    GapPoint p;
    p.cfg = cfg;
    p.gap = dissipative_gap(stabilization_lindbladian(cfg));
    p.reference = cfg.gamma / (cfg.fg.twice() + 1);
    out.push_back(p);
  }
  return out;
}

FirstOrderRate bitflip_rate_firstorder(HalfInt fg, double kappa) {
  require_fg(fg);
  const double f = fg.value();
  FirstOrderRate r;
  r.exact = -kappa * f * a_coefficients(fg).front();
  r.asymptotic = -kappa * std::pow(f, 2.5) * std::sqrt(8.0 * kPi) / std::pow(16.0, f);
  return r;
}

ConservedSet engineered_conserved(HalfInt fg) {
  ConservedSet cs = conserved_analytic(fg);
  const DarkSpinSpace space(fg);
  for (int tm = 2 - fg.twice(), k = 0; tm <= fg.twice() - 2; tm += 2, ++k) {
    const HalfInt m = half(tm);
    cs.j01 += cs.a[k] * (ground_x(space, m) * ground_x(space, -m).adjoint() +
                         excited_x(space, m) * excited_x(space, -m).adjoint());
  }
  cs.j10 = cs.j01.adjoint();
  return cs;
}

CMatrix parity_operator(HalfInt fg) {
  const DarkSpinSpace space(fg);
  CVector d(space.dim());
  for (int i = 0; i < space.ground_dim(); ++i) {
    d(i) = ((fg.twice() - basis_m(fg, i).twice()) / 2) % 2 == 0 ? 1.0 : -1.0;
  }
  for (int i = 0; i < space.excited_dim(); ++i) {
    const int steps = (fg.twice() - basis_m(space.fe(), i).twice() - 2) / 2;
    d(space.ground_dim() + i) = steps % 2 == 0 ? 1.0 : -1.0;
  }
  return d.asDiagonal();
}

PtmSampler stabilized_noise_sampler(const NoiseBenchSpec& spec) {
  if (!(spec.kappa >= 0.0)) throw InvalidArgument("noise strength must be non-negative");
  const bool ou = spec.kind == NoiseKind::kOrnsteinUhlenbeck;
  if (ou && !(spec.lambda > 0.0)) throw InvalidArgument("OU noise needs lambda > 0");
  const DarkSpinSpace space(spec.stab.fg);
  const CMatrix& op = spec.axis == NoiseAxis::kZ ? space.fgz() : space.fgx();
  const Superoperator l = stabilization_lindbladian(spec.stab);
  const Superoperator g = ou ? build_ou3_system(l, op, {spec.kappa, spec.lambda}) : white_noise_lindbladian(l, op, spec.kappa);
  const LogicalBasis basis = stabilization_logical_basis(spec.stab.fg);
  const int n = space.dim();
  CMatrix x0(g.matrix.rows(), 4);
  for (int m = 0; m < 4; ++m) x0.col(m) = ou ? ou3_initial(basis.e[m]) : vec(basis.e[m]);
  return [g, x0, basis, n, ou](const std::vector<double>& times) {
    std::vector<Ptm> out;
    out.reserve(times.size());
    CMatrix x = x0, step;
    double prev_t = 0.0, prev_dt = -1.0;
    for (double t : times) {
      const double dt = t - prev_t;
      if (dt < 0.0) throw InvalidArgument("sample times must be non-decreasing and non-negative");
      if (std::abs(dt - prev_dt) > 1e-12 * std::max(1.0, t)) step = propagator(g, dt);
      x = step * x;
      prev_t = t;
      prev_dt = dt;
      std::array<CMatrix, 4> images;
      for (int m = 0; m < 4; ++m) images[m] = ou ? ou3_average(x.col(m), n) : unvec(x.col(m), n);
      out.push_back(ptm_element_matrix(images, basis));
    }
    return out;
  };
}

RateEstimate stabilized_noise_rates(const NoiseBenchSpec& spec, const RateWindowOptions& opts) {
  if (spec.kappa == 0.0) return RateEstimate{};
  return error_rates(stabilized_noise_sampler(spec), noise_window_center(spec.kappa), opts);
}

}  // namespace darkcat
