// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "darkcat/dark_states.hpp"
#include "darkcat/liouville.hpp"
#include "darkcat/ptm.hpp"

/// Driven-dissipative stabilization of the x-axis cat.
///
/// The drive Omega^{+1} = -Omega^{-1} = -sqrt(2) Omega has dark states
/// |0~> = |Fg, +Fg>_x and |1~> = |Fg, -Fg>_x, and spontaneous emission from the
/// excited manifold pumps everything else back into their span. Omega here is
/// the drive parameter, so the Cartesian Rabi vector has length 2 Omega.
namespace darkcat {

enum class Polarization { kAllThree, kSigmaPmOnly };

struct StabilizationConfig {
  HalfInt fg = whole(1);
  double omega = 1.0;
  double gamma = 1.0;
  Polarization polarization = Polarization::kAllThree;
  double detuning = 0.0;
  double differential_zeeman = 0.0;
};

SphericalRabi stabilization_drive(double omega);

/// Logical kets |Fg, +-Fg>_x embedded in the ground block.
LogicalBasis stabilization_logical_basis(HalfInt fg);

CMatrix stabilization_hamiltonian(const StabilizationConfig& cfg);
/// Decay channels gamma D[C_q^dag], excited to ground, for the enabled polarizations.
std::vector<JumpChannel> stabilization_decay(const StabilizationConfig& cfg);
Superoperator stabilization_lindbladian(const StabilizationConfig& cfg);

enum class ConservedSource { kAnalytic, kNumeric };

struct ConservedSet {
  HalfInt fg;
  CMatrix j00, j01, j10, j11;
  /// a_m for m = 1 - Fg, ..., Fg - 1 in increasing order.
  std::vector<double> a;
  ConservedSource source = ConservedSource::kAnalytic;

  double a_at(HalfInt m) const;
  const CMatrix& j(int mu, int nu) const;
};

/// G(m') summed over m' = -Fg, ..., Fg - 1, computed exactly.
double g_sum(HalfInt fg);
/// Closed form (4 Fg)! / ((2 Fg + 1)! (2 Fg)!).
double g_sum_closed_form(HalfInt fg);
/// a_m in increasing m, from exact rational G products.
std::vector<double> a_coefficients(HalfInt fg);

ConservedSet conserved_analytic(HalfInt fg);
/// Left null space of l, gauged by biorthogonality with |mu~><nu~|.
ConservedSet conserved_numeric(const Superoperator& l, HalfInt fg);

/// [[c00, c01], [c10, c11]] with c_mu,nu = tr[J_mu,nu^dag rho].
Eigen::Matrix2cd project_logical(const CMatrix& rho, const ConservedSet& cs);
/// The projected 2x2 state embedded back into the full space.
CMatrix embed_logical(const Eigen::Matrix2cd& c, const LogicalBasis& basis);

struct GapPoint {
  StabilizationConfig cfg;
  double gap = 0.0;
  double reference = 0.0;  // gamma / (2 Fg + 1)
};

std::vector<GapPoint> dissipative_gap_scan(const std::vector<StabilizationConfig>& grid);

struct FirstOrderRate {
  double exact = 0.0;       // -kappa Fg a_{-(Fg-1)}
  double asymptotic = 0.0;  // -kappa Fg^{5/2} sqrt(8 pi) / 16^Fg
};

FirstOrderRate bitflip_rate_firstorder(HalfInt fg, double kappa);

enum class NoiseKind { kWhite, kOrnsteinUhlenbeck };
enum class NoiseAxis { kZ, kX };

/// Stabilized cat exposed to a fluctuating field along F_gz (or F_gx).
struct NoiseBenchSpec {
  StabilizationConfig stab;
  NoiseKind kind = NoiseKind::kWhite;
  NoiseAxis axis = NoiseAxis::kZ;
  double kappa = 1e-4;
  double lambda = 0.0;  // OU inverse correlation time, unused for white noise
};

/// Logical PTMs at each requested time, starting from the four E_m.
PtmSampler stabilized_noise_sampler(const NoiseBenchSpec& spec);
/// Diagonal PTM slopes, window centered at t kappa / (2 pi) = 1. Zero noise
/// gives zero slopes.
RateEstimate stabilized_noise_rates(const NoiseBenchSpec& spec, const RateWindowOptions& opts = {});

/// Zeroth-order conserved set for sigma-plus/minus-only decay.
ConservedSet engineered_conserved(HalfInt fg);
/// exp(i pi (F_gz + F_ez + P_e - Fg)) on the full space.
CMatrix parity_operator(HalfInt fg);

}  // namespace darkcat
