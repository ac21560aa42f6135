#pragma once

#include <vector>

#include "waveaction/basis.hpp"

namespace waveaction {

/// Concatenation of n_t short-horizon fundamental solutions over segments of
/// length tau = t/n_t. Admissibility: tau < t_bar^mu when mu > 0, and every
/// mode clear of segment conjugate points (|sin(omega_n tau)| > kSinTol).
struct ConcatenationPlan {
  BasisConfig cfg;
  double mu = 0.0;
  double horizon = 0.0;
  int n_segments = 1;
  double tau = 0.0;
};

bool plan_admissible(const BasisConfig& cfg, double mu, double t, int n_segments);

/// Validated plan with the given segment count; throws std::domain_error if
/// inadmissible.
ConcatenationPlan make_plan(const BasisConfig& cfg, double mu, double t, int n_segments);

/// Increments n_t from min_segments until admissible (capped at 1e6).
ConcatenationPlan auto_plan(const BasisConfig& cfg, double mu, double t, int min_segments = 2);

struct IntermediateStates {
  std::vector<SpectralVector> states;  // zeta*_1 .. zeta*_{n_t-1}
  std::vector<int> singular_modes;     // modes with a singular tridiagonal (resonant tau)
};

/// Per mode, solve the (n_t-1) x (n_t-1) tridiagonal system with diagonal
/// d_n = p_n(tau) + r_n(tau) = -(2/alpha_n) cot(omega_n tau), off-diagonal
/// e_n = q_n(tau), and right-hand side (-e_n x_n, 0, ..., 0, -e_n z_n);
/// Thomas algorithm, never materializing the block operator matrix.
IntermediateStates solve_intermediate_states(const ConcatenationPlan& plan,
                                             const SpectralVector& x, const SpectralVector& z);

/// Theta(tau, x, zeta*, z) = sum_k W(tau, zeta*_{k-1}, zeta*_k) with
/// zeta*_0 = x, zeta*_{n_t} = z. n_t = 1 degenerates to W(t, x, z).
double stat_value(const ConcatenationPlan& plan, const SpectralVector& x,
                  const SpectralVector& z);

/// Norm of the gradient of Theta with respect to the interior states,
/// evaluated per mode from the tridiagonal form; <= tolerance at zeta*.
double stationarity_residual(const ConcatenationPlan& plan, const SpectralVector& x,
                             const std::vector<SpectralVector>& zeta, const SpectralVector& z);

}  // namespace waveaction
