// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "darkcat/types.hpp"

namespace darkcat {

using ConstVecMap = Eigen::Map<const CVector>;
using VecMap = Eigen::Map<CVector>;

/// dy = f(t, y). Both maps alias integrator storage and are valid only during the call.
using OdeRhs = std::function<void(double t, ConstVecMap y, VecMap dy)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// First trial step; 0 picks one from the output spacing.
  double initial_step = 0.0;
  /// Upper bound on accepted steps between two consecutive output times.
  int max_steps_per_output = 50'000'000;
};

/// Adaptive 7(8) Runge-Kutta-Fehlberg integration. times[0] is the initial
/// time and must be followed by increasing output times; the result holds the
/// state at every entry of times. Throws NumericalError when step control fails.
std::vector<CVector> integrate_ode(const OdeRhs& rhs, const CVector& y0,
                                   const std::vector<double>& times, const OdeOptions& opts = {});

/// Right-hand side for segment k of a piecewise-defined system.
using SegmentRhs = std::function<void(double t, int k, ConstVecMap y, VecMap dy)>;

/// Like integrate_ode, restarting the integrator at each entry of breaks so
/// that segment k only ever sees its own formulas, including at its end
/// points. breaks.front() must equal times.front() and every output time must
/// lie within [breaks.front(), breaks.back()].
std::vector<CVector> integrate_ode_piecewise(const SegmentRhs& rhs, const CVector& y0, const std::vector<double>& breaks,
                                             const std::vector<double>& times, const OdeOptions& opts = {});

}  // namespace darkcat
