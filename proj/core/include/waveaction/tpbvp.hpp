#pragma once

#include <vector>

#include "waveaction/basis.hpp"
#include "waveaction/riccati.hpp"

namespace waveaction {

enum class TerminalData { Displacement, Velocity };

/// Two-point boundary value problem: given the initial displacement and a
/// terminal displacement z or terminal velocity v at horizon t, synthesize
/// the initial velocity. n_segments > 1 (or mu > 0 with t >= t_bar^mu)
/// routes the displacement case through the long-horizon concatenation.
struct TpbvpProblem {
  BasisConfig cfg;
  double mu = 0.0;  // in [0, 1]; 0 solves the exact wave equation
  double horizon = 0.0;
  SpectralVector initial_displacement;
  TerminalData kind = TerminalData::Displacement;
  SpectralVector terminal;  // z (Displacement) or v (Velocity)
  int n_segments = 1;       // 1 = direct / auto-delegate
};

/// Singular modes are excluded from w0 (coefficient set to 0) and reported,
/// so the caller can see which target components are unreachable at t.
struct TpbvpSolution {
  SpectralVector initial_velocity;      // w*(0)
  SpectralVector z_star;                // achieved/selected terminal displacement
  std::vector<int> singular_modes;      // 1-based
  std::vector<double> mode_condition;   // 1/|sin(omega_n t)| per mode
  int segments_used = 1;
};

/// w0_n = (lambda_n^mu / m) [p_n(t) x_n + q_n(t) z_n]
///      = omega_n^mu [z_n / sin(omega_n^mu t) - x_n cot(omega_n^mu t)].
TpbvpSolution solve_displacement(const TpbvpProblem& prob);

/// Terminal-velocity synthesis: z*_n = -(1/r_n) [q_n x_n + (m/lambda_n) v_n],
/// then the displacement solve with z = z*. Modes with r_n = 0 (or at
/// conjugate points) are reported as singular.
TpbvpSolution solve_velocity(const TpbvpProblem& prob);

TpbvpSolution solve(const TpbvpProblem& prob);

/// One-shot form of the velocity-target initial input,
/// w0_n = (lambda_n^mu/m) [(p_n - q_n^2/r_n) x_n - (m/lambda_n)(q_n/r_n) v_n];
/// algebraically identical to composing z* with the displacement solve.
SpectralVector velocity_one_shot(const TpbvpProblem& prob);

/// Optimal state feedback w_n(s) = (lambda_n^mu/m) [p_n(t-s) x_n + q_n(t-s) z*_n].
/// Undefined within delta_min of the final time.
SpectralVector optimal_feedback(const FundamentalSolution& fs, double s,
                                const SpectralVector& x_now, const SpectralVector& z_star);

}  // namespace waveaction
