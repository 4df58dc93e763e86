// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include "darkcat/ode.hpp"

#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace darkcat {

namespace odeint = boost::numeric::odeint;

std::vector<CVector> integrate_ode(const OdeRhs& rhs, const CVector& y0,
                                   const std::vector<double>& times, const OdeOptions& opts) {
  if (times.empty()) throw InvalidArgument("integrate_ode needs at least the initial time");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("output times must increase strictly");
  }
  const Eigen::Index n = y0.size();
  std::vector<CVector> out;
  out.reserve(times.size());
  out.push_back(y0);
  if (times.size() == 1) return out;

  using State = std::vector<cplx>;
  State y(y0.data(), y0.data() + n);
  auto system = [&](const State& x, State& dx, double t) {
    rhs(t, ConstVecMap(x.data(), n), VecMap(dx.data(), n));
  };
  auto observer = [&](const State& x, double t) {
    if (t > times.front()) out.emplace_back(Eigen::Map<const CVector>(x.data(), n));
  };
  double dt = opts.initial_step;
  if (!(dt > 0.0)) dt = 1e-3 * (times[1] - times[0]);

  using Stepper = odeint::runge_kutta_fehlberg78<State, double, State, double>;
  auto stepper = odeint::make_controlled(opts.atol, opts.rtol, Stepper());
  try {
    odeint::integrate_times(stepper, system, y, times.begin(), times.end(), dt, observer,
                            odeint::max_step_checker(opts.max_steps_per_output));
  } catch (const odeint::step_adjustment_error& e) {
    std::ostringstream os;
    os << "step size underflow near t = " << (out.size() < times.size() ? times[out.size()] : times.back())
       << ": " << e.what();
    throw NumericalError(os.str());
  } catch (const odeint::no_progress_error& e) {
    throw NumericalError(std::string("integrator exceeded its step budget: ") + e.what());
  }
  if (out.size() != times.size()) throw NumericalError("integrator returned an incomplete trajectory");
  return out;
}

std::vector<CVector> integrate_ode_piecewise(const SegmentRhs& rhs, const CVector& y0, const std::vector<double>& breaks,
                                             const std::vector<double>& times, const OdeOptions& opts) {
  if (breaks.size() < 2) throw InvalidArgument("piecewise integration needs at least one segment");
  if (times.empty() || times.front() != breaks.front()) throw InvalidArgument("output times must start at the first break");
  if (times.back() > breaks.back()) throw InvalidArgument("output time beyond the last break");
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    if (!(breaks[i] > breaks[i - 1])) throw InvalidArgument("breaks must increase strictly");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("output times must increase strictly");
  }
  std::vector<CVector> out{y0};
  CVector y = y0;
  std::size_t next = 1;
  for (std::size_t k = 0; k + 1 < breaks.size() && next < times.size(); ++k) {
    std::vector<double> grid{breaks[k]};
    const std::size_t first = next;
    while (next < times.size() && times[next] <= breaks[k + 1]) {
      if (times[next] > grid.back()) grid.push_back(times[next]);
      ++next;
    }
    const bool ends_on_break = grid.back() == breaks[k + 1];
    if (!ends_on_break) grid.push_back(breaks[k + 1]);
    const int seg = static_cast<int>(k);
    const auto traj = integrate_ode(
        [&](double t, ConstVecMap x, VecMap dx) { rhs(t, seg, x, dx); }, y, grid, opts);
    // Output times equal to a break were folded into the grid once.
    std::size_t g = 1;
    for (std::size_t i = first; i < next; ++i) {
      if (times[i] == breaks[k]) {
        out.push_back(y);
        continue;
      }
      while (grid[g] != times[i]) ++g;
      out.push_back(traj[g]);
    }
    y = traj.back();
  }
  if (out.size() != times.size()) throw NumericalError("piecewise integration returned an incomplete trajectory");
  return out;
}

}  // namespace darkcat
