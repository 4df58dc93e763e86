// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "darkcat/types.hpp"

/// Pauli transfer matrices over a two-state logical subspace.
///
/// Index order is (1, X, Y, Z) with Z = |0><0| - |1><1| and
/// R[n][m] = tr[E_n Phi(E_m)] / 2.
namespace darkcat {

using Ptm = Eigen::Matrix4d;

struct LogicalBasis {
  CVector ket0, ket1;
  std::array<CMatrix, 4> e;  // identity, X, Y, Z on the logical subspace

  LogicalBasis() = default;
  LogicalBasis(CVector zero, CVector one);
  int dim() const { return static_cast<int>(ket0.size()); }
};

/// Maps an initial operator to its evolved image.
using OperatorMap = std::function<CMatrix(const CMatrix&)>;
/// Maps an initial operator to its images at a fixed list of times.
using OperatorTrajectory = std::function<std::vector<CMatrix>(const CMatrix&)>;

/// Throws NumericalError when an entry has an imaginary part above 1e-9.
Ptm compute_ptm(const OperatorMap& evolve, const LogicalBasis& basis);
std::vector<Ptm> compute_ptm_trajectory(const OperatorTrajectory& evolve, const LogicalBasis& basis);
Ptm ptm_element_matrix(const std::array<CMatrix, 4>& images, const LogicalBasis& basis);

Ptm ideal_z_rotation_ptm(double alpha);
Ptm ideal_x_rotation_ptm(double alpha);
/// PTM of the logical X gate, diag(1, 1, -1, -1).
Ptm pauli_x_ptm();

struct DiagonalRate {
  double slope = 0.0;             // least-squares dR/dt over the window
  double normalized_slope = 0.0;  // slope divided by the fitted value at the window center
  double t_lo = 0.0, t_hi = 0.0;
  double r_squared = 1.0;
  int shifts = 0;  // number of times the window center was halved
};

struct RateEstimate {
  std::array<DiagonalRate, 4> diag;
};

struct RateWindowOptions {
  int samples = 7;
  double min_r_squared = 0.999;
  int max_shifts = 16;
};

/// PTMs at the requested times.
using PtmSampler = std::function<std::vector<Ptm>(const std::vector<double>&)>;

/// Window center t kappa / (2 pi) = 1.
double noise_window_center(double kappa);

/// Linear least-squares fit of values over times, reported relative to the
/// window center (the midpoint of times).
DiagonalRate fit_linear_window(const std::vector<double>& times, const std::vector<double>& values);

/// Fits each diagonal element over [t_center/sqrt 2, t_center sqrt 2]. A
/// diagonal that fails the linearity test gets its window center halved until
/// it passes; throws NumericalError when no window qualifies.
RateEstimate error_rates(const PtmSampler& sampler, double t_center, const RateWindowOptions& opts = {});

struct GateChannel {
  Ptm residual;
  double alpha_star = 0.0;
};

/// Residual R R_ideal(alpha*)^-1, with alpha* minimizing the Frobenius norm of
/// the residual's off-diagonal entries. Among equally good minima the one with
/// the largest residual trace wins.
GateChannel gate_error_channel(const Ptm& r, const std::function<Ptm(double)>& family);

struct Infidelity {
  double value = 0.0;
  bool biased = true;  // 1 - R_zz < 1 - R_xx
};

/// Worst-case infidelity (1 - R_xx) / 2 of a biased residual channel.
Infidelity worst_case_infidelity(const Ptm& residual);

}  // namespace darkcat
