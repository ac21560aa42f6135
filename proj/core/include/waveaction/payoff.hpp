#pragma once

#include <vector>

#include "waveaction/basis.hpp"

namespace waveaction {

/// Piecewise-constant velocity input: K spectral vectors of duration dt each.
/// The induced trajectory xi(s) = x0 + int w is piecewise linear in every
/// coefficient, so the payoff integral is evaluated in closed form per step.
struct PiecewiseConstantInput {
  BasisConfig basis;
  double dt = 0.0;
  std::vector<std::vector<double>> steps;  // K x N velocity coefficients

  double duration() const { return dt * static_cast<double>(steps.size()); }
  static PiecewiseConstantInput zero(const BasisConfig& cfg, int n_steps, double horizon);
};

enum class TerminalKind { Zero, Quadratic, LinearVelocity };

/// The action payoff J^mu: running payoff (kappa/2)||xi||_{1/2}^2 -
/// (m/2)||J^mu w||_{1/2}^2 plus one of three terminal payoffs:
///   Zero            psi = 0
///   Quadratic       psi = -(c/2) ||K_mu (xi(t) - z)||_{1/2}^2
///   LinearVelocity  psi = m <J J v, xi(t)>_{1/2}
struct PayoffSpec {
  BasisConfig cfg;
  double mu = 0.0;
  double horizon = 0.0;
  TerminalKind terminal = TerminalKind::Zero;
  double weight_c = 0.0;   // Quadratic only, > 0
  SpectralVector target;   // z (Quadratic) or v (LinearVelocity)
};

double evaluate_payoff(const PayoffSpec& spec, const SpectralVector& x0,
                       const PiecewiseConstantInput& w);

/// J(w* + delta w~) - 2 J(w*) + J(w* - delta w~).
double second_difference(const PayoffSpec& spec, const SpectralVector& x0,
                         const PiecewiseConstantInput& w_star,
                         const PiecewiseConstantInput& w_tilde, double delta);

/// Concavity horizon t_bar^mu = mu sqrt(2 m / kappa).
double concave_horizon(double mu, double m, double kappa);

struct EnergySplit {
  double potential;  // V = (kappa/2) sum x_n^2
  double kinetic;    // T^mu = (m/2) sum (1/lambda_n + mu^2) w_n^2
};

EnergySplit energy_split(const SpectralVector& x, const SpectralVector& w, double mu,
                         double m, double kappa);

/// ||w||^2 in W[0,t]: sum over steps of dt * sum_n w_n^2.
double input_norm_sq(const PiecewiseConstantInput& w);

}  // namespace waveaction
