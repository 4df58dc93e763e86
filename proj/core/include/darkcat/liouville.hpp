// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "darkcat/ode.hpp"
#include "darkcat/types.hpp"

/// Open-system evolution in Liouville space.
///
/// Operators are vectorized by stacking columns, so vec(A X B) = (B^T kron A) vec(X).
/// Colored noise is an Ornstein-Uhlenbeck process discretized on three
/// levels; the state then carries one marginal operator per level and the
/// noise-averaged state is their sum.
namespace darkcat {

struct Superoperator {
  CMatrix matrix;
  int dim = 0;  // Hilbert-space dimension n; matrix is n^2 x n^2 (or 3 n^2 x 3 n^2 for OU)
};

struct JumpChannel {
  CMatrix op;
  double rate = 0.0;
};

struct OUNoise {
  double kappa = 0.0;   // white-noise-limit strength
  double lambda = 0.0;  // inverse correlation time
  static constexpr int kLevels = 3;
};

CVector vec(const CMatrix& op);
CMatrix unvec(const CVector& v, int n);

/// -i (1 kron H - H^T kron 1).
Superoperator vectorize_hamiltonian(const CMatrix& h);
/// rate [conj(a) kron a - (1 kron a^dag a + (a^dag a)^T kron 1) / 2].
Superoperator vectorize_dissipator(const JumpChannel& ch);
/// 1 kron O - O^T kron 1, the vectorized commutator with O.
Superoperator commutator_superoperator(const CMatrix& op);
Superoperator lindbladian(const CMatrix& h, const std::vector<JumpChannel>& jumps);

/// Fokker-Planck generator of the three-level chain, lambda [[-1, 1/2, 0], [1, -1, 1], [0, 1/2, -1]].
RMatrix ou3_chain_generator(double lambda);
/// Stationary distribution (1/4, 1/2, 1/4).
Eigen::Vector3d ou3_stationary();
/// Noise amplitudes sqrt(kappa lambda) (-1, 0, 1).
Eigen::Vector3d ou3_levels(const OUNoise& noise);

/// chain kron 1 - i diag(levels) kron [O, .] + 1_3 kron L on 3 n^2 dimensions.
Superoperator build_ou3_system(const Superoperator& l, const CMatrix& noise_op, const OUNoise& noise);
/// Marginals P_ss(k) vec(rho0), stacked.
CVector ou3_initial(const CMatrix& rho0);
/// Sum of the three marginals.
CMatrix ou3_average(const CVector& u, int n);

/// L + kappa D[noise_op].
Superoperator white_noise_lindbladian(const Superoperator& l, const CMatrix& noise_op, double kappa);

struct Spectrum {
  CVector eigenvalues;
  CMatrix right;  // columns
  CMatrix left;   // rows, biorthogonal to right
};

Spectrum spectrum(const Superoperator& l);
/// Smallest -Re(lambda) over eigenvalues with Re(lambda) < -1e-9 ||L||.
double dissipative_gap(const Superoperator& l);

/// exp(L t).
CMatrix propagator(const Superoperator& l, double t);

enum class EvolveMethod { kAdaptive, kExponential };

/// States at every entry of times (times[0] is the initial time).
std::vector<CVector> evolve(const Superoperator& g, const CVector& x0, const std::vector<double>& times,
                            EvolveMethod method = EvolveMethod::kAdaptive, const OdeOptions& opts = {});

/// Time-dependent Lindblad model evaluated in operator form, optionally with
/// OU noise -i x(t) [O, rho] entering through the three-level marginals.
struct OperatorModel {
  int dim = 0;
  std::function<CMatrix(double)> hamiltonian;
  std::vector<JumpChannel> jumps;
  std::optional<CMatrix> noise_op;
  OUNoise noise;
};

/// Noise-averaged states at every entry of times, starting from any operator rho0.
std::vector<CMatrix> evolve_operator(const OperatorModel& model, const CMatrix& rho0,
                                     const std::vector<double>& times, const OdeOptions& opts = {});

/// Piecewise variant of evolve_operator: hamiltonian(t, k) applies on
/// [breaks[k], breaks[k+1]] and model.hamiltonian is ignored.
std::vector<CMatrix> evolve_operator_piecewise(const OperatorModel& model,
                                               const std::function<CMatrix(double, int)>& hamiltonian,
                                               const std::vector<double>& breaks, const CMatrix& rho0,
                                               const std::vector<double>& times, const OdeOptions& opts = {});

/// U(t) for U' = -i H(t) U, starting from u0.
std::vector<CMatrix> evolve_unitary(const std::function<CMatrix(double)>& hamiltonian, const CMatrix& u0,
                                    const std::vector<double>& times, const OdeOptions& opts = {});

/// Piecewise variant of evolve_unitary; u0 may have any number of columns.
std::vector<CMatrix> evolve_unitary_piecewise(const std::function<CMatrix(double, int)>& hamiltonian,
                                              const std::vector<double>& breaks, const CMatrix& u0,
                                              const std::vector<double>& times, const OdeOptions& opts = {});

}  // namespace darkcat
