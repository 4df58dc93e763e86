// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/ptm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace darkcat {

LogicalBasis::LogicalBasis(CVector zero, CVector one) : ket0(std::move(zero)), ket1(std::move(one)) {
  if (ket0.size() != ket1.size()) throw InvalidArgument("logical kets differ in dimension");
  if (std::abs(ket0.dot(ket1)) > 1e-10) throw InvalidArgument("logical kets are not orthogonal");
  const CMatrix p00 = ket0 * ket0.adjoint(), p11 = ket1 * ket1.adjoint();
  const CMatrix p01 = ket0 * ket1.adjoint(), p10 = ket1 * ket0.adjoint();
  e[0] = p00 + p11;
  e[1] = p01 + p10;
  e[2] = -kI * p01 + kI * p10;
  e[3] = p00 - p11;
}

Ptm ptm_element_matrix(const std::array<CMatrix, 4>& images, const LogicalBasis& basis) {
  Ptm r;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      const cplx v = 0.5 * (basis.e[n].cwiseProduct(images[m].transpose())).sum();
      if (std::abs(v.imag()) > 1e-9) {
        std::ostringstream os;
        os << "PTM entry (" << n << ", " << m << ") has imaginary part " << v.imag();
        throw NumericalError(os.str());
      }
      r(n, m) = v.real();
    }
  }
  return r;
}

Ptm compute_ptm(const OperatorMap& evolve, const LogicalBasis& basis) {
  std::array<CMatrix, 4> images;
  for (int m = 0; m < 4; ++m) images[m] = evolve(basis.e[m]);
  return ptm_element_matrix(images, basis);
}

std::vector<Ptm> compute_ptm_trajectory(const OperatorTrajectory& evolve, const LogicalBasis& basis) {
  std::array<std::vector<CMatrix>, 4> traj;
  for (int m = 0; m < 4; ++m) traj[m] = evolve(basis.e[m]);
  const std::size_t nt = traj[0].size();
  std::vector<Ptm> out;
  out.reserve(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    std::array<CMatrix, 4> images;
    for (int m = 0; m < 4; ++m) {
      if (traj[m].size() != nt) throw NumericalError("operator trajectories differ in length");
      images[m] = traj[m][k];
    }
    out.push_back(ptm_element_matrix(images, basis));
  }
  return out;
}

Ptm ideal_z_rotation_ptm(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  Ptm r = Ptm::Identity();
  r(1, 1) = c;
  r(1, 2) = -s;
  r(2, 1) = s;
  r(2, 2) = c;
  return r;
}

Ptm ideal_x_rotation_ptm(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  Ptm r = Ptm::Identity();
  r(2, 2) = c;
  r(2, 3) = -s;
  r(3, 2) = s;
  r(3, 3) = c;
  return r;
}

Ptm pauli_x_ptm() { return Eigen::Vector4d(1.0, 1.0, -1.0, -1.0).asDiagonal(); }

double noise_window_center(double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("rate window needs kappa > 0");
  return 2.0 * kPi / kappa;
}

DiagonalRate fit_linear_window(const std::vector<double>& times, const std::vector<double>& values) {
  const std::size_t n = times.size();
  if (n < 2 || values.size() != n) throw InvalidArgument("linear fit needs matching samples");
  const double tc = 0.5 * (times.front() + times.back());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += times[i] - tc;
    my += values[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = times[i] - tc - mx, dy = values[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  DiagonalRate out;
  out.t_lo = times.front();
  out.t_hi = times.back();
  out.slope = sxy / sxx;
  const double center = my - out.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = center + out.slope * (times[i] - tc);
    sse += (values[i] - fit) * (values[i] - fit);
  }
  // A flat series below roundoff counts as perfectly linear.
  const double scale = std::max(1.0, std::abs(my));
  out.r_squared = syy <= 1e-24 * scale * scale * n ? 1.0 : 1.0 - sse / syy;
  out.normalized_slope = center != 0.0 ? out.slope / center : 0.0;
  return out;
}

RateEstimate error_rates(const PtmSampler& sampler, double t_center, const RateWindowOptions& opts) {
  if (opts.samples < 5) throw InvalidArgument("rate window needs at least 5 samples");
  if (!(t_center > 0.0)) throw InvalidArgument("rate window center must be positive");
  RateEstimate est;
  std::array<bool, 4> done{false, false, false, false};
  double tc = t_center;
  for (int shift = 0; shift <= opts.max_shifts; ++shift, tc *= 0.5) {
    const double lo = tc / std::sqrt(2.0), hi = tc * std::sqrt(2.0);
    std::vector<double> times(opts.samples);
    for (int k = 0; k < opts.samples; ++k) times[k] = lo + (hi - lo) * k / (opts.samples - 1);
    const std::vector<Ptm> ptms = sampler(times);
    if (ptms.size() != times.size()) throw NumericalError("PTM sampler returned the wrong number of samples");
    for (int d = 0; d < 4; ++d) {
      if (done[d]) continue;
      std::vector<double> values(times.size());
      for (std::size_t k = 0; k < times.size(); ++k) values[k] = ptms[k](d, d);
      DiagonalRate fit = fit_linear_window(times, values);
      fit.shifts = shift;
      est.diag[d] = fit;
      done[d] = fit.r_squared >= opts.min_r_squared;
    }
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) return est;
  }
  std::ostringstream os;
  os << "no linear window found for PTM diagonal(s):";
  for (int d = 0; d < 4; ++d) {
    if (!done[d]) os << ' ' << d << " (R^2 = " << est.diag[d].r_squared << ")";
  }
  throw NumericalError(os.str());
}

namespace {

double offdiag_norm2(const Ptm& m) {
  return m.squaredNorm() - m.diagonal().squaredNorm();
}

}  // namespace

GateChannel gate_error_channel(const Ptm& r, const std::function<Ptm(double)>& family) {
  auto residual = [&](double a) -> Ptm {
    const Ptm ideal = family(a);
    if (std::abs(ideal.determinant()) < 1e-12) throw NumericalError("ideal gate PTM is singular");
    return r * ideal.inverse();
  };
  auto objective = [&](double a) { return offdiag_norm2(residual(a)); };
  // Coarse scan over one period, then golden-section refinement of each local minimum.
  const int grid = 720;
  std::vector<double> f(grid);
  for (int k = 0; k < grid; ++k) f[k] = objective(2.0 * kPi * k / grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double best_a = 0.0, best_f = std::numeric_limits<double>::infinity(), best_tr = -1e300;
  std::vector<std::pair<double, double>> minima;
  for (int k = 0; k < grid; ++k) {
    const double prev = f[(k + grid - 1) % grid], next = f[(k + 1) % grid];
    if (!(f[k] <= prev && f[k] <= next)) continue;
    double lo = 2.0 * kPi * (k - 1) / grid, hi = 2.0 * kPi * (k + 1) / grid;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    while (hi - lo > 1e-11) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = objective(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = objective(x2);
      }
    }
    // Value comparisons stall near sqrt(eps); polish on the central-difference derivative.
    double a = 0.5 * (lo + hi);
    const double h = 1e-5;
    for (int it = 0; it < 4; ++it) {
      const double fm = objective(a - h), f0 = objective(a), fp = objective(a + h);
      const double curv = (fp - 2.0 * f0 + fm) / (h * h);
      if (!(curv > 0.0)) break;
      const double step = 0.5 * (fp - fm) / h / curv;
      if (std::abs(step) > 4.0 * kPi / grid) break;
      a -= step;
    }
    minima.emplace_back(a, objective(a));
  }
  for (const auto& [a, fa] : minima) best_f = std::min(best_f, fa);
  for (const auto& [a, fa] : minima) {
    if (fa > best_f + 1e-9 + 1e-6 * best_f) continue;
    const double tr = residual(a).trace();
    if (tr > best_tr) {
      best_tr = tr;
      best_a = a;
    }
  }
  GateChannel out;
  out.alpha_star = std::remainder(best_a, 2.0 * kPi);
  out.residual = residual(out.alpha_star);
  return out;
}

Infidelity worst_case_infidelity(const Ptm& residual) {
  Infidelity out;
  out.value = 0.5 * (1.0 - residual(1, 1));
  out.biased = (1.0 - residual(3, 3)) <= (1.0 - residual(1, 1));
  return out;
}

}  // namespace darkcat
