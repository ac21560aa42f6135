#include "waveaction/payoff.hpp"

#include <cmath>
#include <stdexcept>

namespace waveaction {

PiecewiseConstantInput PiecewiseConstantInput::zero(const BasisConfig& cfg, int n_steps,
                                                    double horizon) {
  if (n_steps < 1) throw std::invalid_argument("PiecewiseConstantInput: need >= 1 step");
  PiecewiseConstantInput w;
  w.basis = cfg;
  w.dt = horizon / static_cast<double>(n_steps);
  w.steps.assign(static_cast<size_t>(n_steps),
                 std::vector<double>(static_cast<size_t>(cfg.truncation), 0.0));
  return w;
}

namespace {

void check_input(const PayoffSpec& spec, const SpectralVector& x0,
                 const PiecewiseConstantInput& w) {
  require_same_basis(spec.cfg, x0.basis, "evaluate_payoff");
  require_same_basis(spec.cfg, w.basis, "evaluate_payoff");
  if (std::abs(w.duration() - spec.horizon) > 1e-12 * std::max(1.0, spec.horizon))
    throw std::invalid_argument("evaluate_payoff: input duration must equal the horizon");
  for (const auto& step : w.steps) {
    if (static_cast<int>(step.size()) != spec.cfg.truncation)
      throw std::invalid_argument("evaluate_payoff: step length must equal N");
  }
  if (spec.terminal == TerminalKind::Quadratic && !(spec.weight_c > 0.0))
    throw std::invalid_argument("evaluate_payoff: quadratic terminal payoff needs c > 0");
  if (spec.terminal != TerminalKind::Zero)
    require_same_basis(spec.cfg, spec.target.basis, "evaluate_payoff target");
}

}  // namespace

double evaluate_payoff(const PayoffSpec& spec, const SpectralVector& x0,
                       const PiecewiseConstantInput& w) {
  check_input(spec, x0, w);
  const BasisConfig& cfg = spec.cfg;
  const int N = cfg.truncation;
  const double m = cfg.mass;
  const double kappa = cfg.stiffness;
  const double mu2 = spec.mu * spec.mu;
  const double dt = w.dt;

  std::vector<double> xi = x0.coeffs;
  double running = 0.0;
  for (const auto& step : w.steps) {
    for (int i = 0; i < N; ++i) {
      const double lam = lambda_n(i + 1, cfg);
      const double xin = xi[static_cast<size_t>(i)];
      const double wn = step[static_cast<size_t>(i)];
      // xi_n(s) = xi_n + s w_n on the step: the integrand is quadratic in s,
      // integrated in closed form.
      running += 0.5 * kappa * (xin * xin * dt + xin * wn * dt * dt + wn * wn * dt * dt * dt / 3.0);
      running -= 0.5 * m * (1.0 / lam + mu2) * wn * wn * dt;
      xi[static_cast<size_t>(i)] = xin + wn * dt;
    }
  }

  double terminal = 0.0;
  switch (spec.terminal) {
    case TerminalKind::Zero:
      break;
    case TerminalKind::Quadratic: {
      // psi = -(c/2) ||K_mu (xi(t) - z)||^2, K_mu eigenvalue squared = m_n^mu.
      for (int i = 0; i < N; ++i) {
        const double lam = lambda_n(i + 1, cfg);
        const double mmu = std::sqrt((1.0 + mu2 * lam) / lam);
        const double d = xi[static_cast<size_t>(i)] - spec.target.coeffs[static_cast<size_t>(i)];
        terminal -= 0.5 * spec.weight_c * mmu * d * d;
      }
      break;
    }
    case TerminalKind::LinearVelocity: {
      // psi_v = m <J J v, xi(t)>_{1/2}.
      for (int i = 0; i < N; ++i) {
        const double lam = lambda_n(i + 1, cfg);
        terminal += m * spec.target.coeffs[static_cast<size_t>(i)] / lam *
                    xi[static_cast<size_t>(i)];
      }
      break;
    }
  }
  return running + terminal;
}

double second_difference(const PayoffSpec& spec, const SpectralVector& x0,
                         const PiecewiseConstantInput& w_star,
                         const PiecewiseConstantInput& w_tilde, double delta) {
  if (delta == 0.0) throw std::invalid_argument("second_difference: delta must be nonzero");
  if (w_star.steps.size() != w_tilde.steps.size() || w_star.dt != w_tilde.dt)
    throw std::invalid_argument("second_difference: input shapes must match");

  auto shifted = [&](double sign) {
    PiecewiseConstantInput w = w_star;
    for (size_t k = 0; k < w.steps.size(); ++k)
      for (size_t i = 0; i < w.steps[k].size(); ++i)
        w.steps[k][i] += sign * delta * w_tilde.steps[k][i];
    return w;
  };

  const double plus = evaluate_payoff(spec, x0, shifted(+1.0));
  const double mid = evaluate_payoff(spec, x0, w_star);
  const double minus = evaluate_payoff(spec, x0, shifted(-1.0));
  return plus - 2.0 * mid + minus;
}

double concave_horizon(double mu, double m, double kappa) {
  if (mu < 0.0) throw std::invalid_argument("concave_horizon: mu must be >= 0");
  return mu * std::sqrt(2.0 * m / kappa);
}

EnergySplit energy_split(const SpectralVector& x, const SpectralVector& w, double mu, double m,
                         double kappa) {
  require_same_basis(x.basis, w.basis, "energy_split");
  EnergySplit out{0.0, 0.0};
  const double mu2 = mu * mu;
  for (int i = 0; i < x.size(); ++i) {
    const double lam = lambda_n(i + 1, x.basis);
    const double xn = x.coeffs[static_cast<size_t>(i)];
    const double wn = w.coeffs[static_cast<size_t>(i)];
    out.potential += 0.5 * kappa * xn * xn;
    out.kinetic += 0.5 * m * (1.0 / lam + mu2) * wn * wn;
  }
  return out;
}

double input_norm_sq(const PiecewiseConstantInput& w) {
  double s = 0.0;
  for (const auto& step : w.steps)
    for (double wn : step) s += wn * wn;
  return s * w.dt;
}

}  // namespace waveaction
