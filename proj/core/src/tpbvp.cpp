#include "waveaction/tpbvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "waveaction/errors.hpp"
#include "waveaction/long_horizon.hpp"
#include "waveaction/payoff.hpp"

namespace waveaction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_problem(const TpbvpProblem& prob) {
  require_same_basis(prob.cfg, prob.initial_displacement.basis, "TpbvpProblem");
  require_same_basis(prob.cfg, prob.terminal.basis, "TpbvpProblem");
  if (prob.mu < 0.0 || prob.mu > 1.0)
    throw std::domain_error("TpbvpProblem: mu must lie in [0, 1]");
  if (!(prob.horizon > 0.0)) throw std::domain_error("TpbvpProblem: horizon must be > 0");
  if (prob.n_segments < 1) throw std::domain_error("TpbvpProblem: n_segments must be >= 1");
}

TpbvpSolution direct_displacement(const TpbvpProblem& prob) {
  const BasisConfig& cfg = prob.cfg;
  const FundamentalSolution fs = make_fundamental_solution(prob.mu, kInf, prob.horizon, cfg);

  TpbvpSolution sol;
  sol.initial_velocity = SpectralVector(cfg);
  sol.z_star = prob.terminal;
  sol.singular_modes = fs.singular_modes;
  sol.mode_condition.resize(static_cast<size_t>(cfg.truncation), 0.0);
  sol.segments_used = 1;

  size_t next_singular = 0;
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, prob.mu, cfg);
    const double s = std::sin(mp.omega * prob.horizon);
    sol.mode_condition[i] = (std::abs(s) < kSinTol) ? kInf : 1.0 / std::abs(s);
    if (next_singular < sol.singular_modes.size() && sol.singular_modes[next_singular] == n) {
      ++next_singular;
      continue;  // excluded from w0, reported
    }
    const ModeTriple& m = fs.mode(n);
    sol.initial_velocity.coeffs[i] =
        mp.lambda_mu / cfg.mass *
        (m.p * prob.initial_displacement.coeffs[i] + m.q * prob.terminal.coeffs[i]);
  }
  return sol;
}

TpbvpSolution concatenated_displacement(const TpbvpProblem& prob) {
  const BasisConfig& cfg = prob.cfg;
  const ConcatenationPlan plan =
      prob.n_segments > 1 ? make_plan(cfg, prob.mu, prob.horizon, prob.n_segments)
                          : auto_plan(cfg, prob.mu, prob.horizon);
  IntermediateStates inter =
      solve_intermediate_states(plan, prob.initial_displacement, prob.terminal);
  const FundamentalSolution seg = make_fundamental_solution(prob.mu, kInf, plan.tau, cfg);

  // Initial velocity = optimal feedback at s = 0 on the first segment, whose
  // terminal displacement is zeta*_1 (or z itself when n_t = 1).
  const SpectralVector& first_target = inter.states.empty() ? prob.terminal : inter.states.front();

  TpbvpSolution sol;
  sol.initial_velocity = SpectralVector(cfg);
  sol.z_star = prob.terminal;
  sol.singular_modes = inter.singular_modes;
  for (int n : seg.singular_modes) {
    if (std::find(sol.singular_modes.begin(), sol.singular_modes.end(), n) ==
        sol.singular_modes.end())
      sol.singular_modes.push_back(n);
  }
  std::sort(sol.singular_modes.begin(), sol.singular_modes.end());
  sol.mode_condition.resize(static_cast<size_t>(cfg.truncation), 0.0);
  sol.segments_used = plan.n_segments;

  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, prob.mu, cfg);
    const double s = std::sin(mp.omega * plan.tau);
    sol.mode_condition[i] = (std::abs(s) < kSinTol) ? kInf : 1.0 / std::abs(s);
    if (std::binary_search(sol.singular_modes.begin(), sol.singular_modes.end(), n)) continue;
    const ModeTriple& m = seg.mode(n);
    sol.initial_velocity.coeffs[i] =
        mp.lambda_mu / cfg.mass *
        (m.p * prob.initial_displacement.coeffs[i] + m.q * first_target.coeffs[i]);
  }
  return sol;
}

}  // namespace

TpbvpSolution solve_displacement(const TpbvpProblem& prob) {
  check_problem(prob);
  if (prob.kind != TerminalData::Displacement)
    throw std::invalid_argument("solve_displacement: terminal kind must be Displacement");
  const double tbar = concave_horizon(prob.mu, prob.cfg.mass, prob.cfg.stiffness);
  const bool needs_concat =
      prob.n_segments > 1 || (prob.mu > 0.0 && prob.horizon >= tbar);
  return needs_concat ? concatenated_displacement(prob) : direct_displacement(prob);
}

TpbvpSolution solve_velocity(const TpbvpProblem& prob) {
  check_problem(prob);
  if (prob.kind != TerminalData::Velocity)
    throw std::invalid_argument("solve_velocity: terminal kind must be Velocity");
  if (prob.mu > 0.0 &&
      prob.horizon >= concave_horizon(prob.mu, prob.cfg.mass, prob.cfg.stiffness))
    throw std::domain_error("solve_velocity: horizon must be below t_bar^mu for mu > 0");

  const BasisConfig& cfg = prob.cfg;
  const FundamentalSolution fs = make_fundamental_solution(prob.mu, kInf, prob.horizon, cfg);

  TpbvpSolution sol;
  sol.initial_velocity = SpectralVector(cfg);
  sol.z_star = SpectralVector(cfg);
  sol.singular_modes = fs.singular_modes;
  sol.mode_condition.resize(static_cast<size_t>(cfg.truncation), 0.0);
  sol.segments_used = 1;

  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, prob.mu, cfg);
    const double phase = mp.omega * prob.horizon;
    const double s = std::sin(phase);
    sol.mode_condition[i] = (std::abs(s) < kSinTol) ? kInf : 1.0 / std::abs(s);
    if (std::abs(s) < kSinTol) continue;  // already recorded by fs
    // r_n = 0 exactly when cos(omega t) = 0: velocity-targeting conjugate point.
    if (std::abs(std::cos(phase)) < kSinTol) {
      sol.singular_modes.push_back(n);
      continue;
    }
    const ModeTriple& m = fs.mode(n);
    const double xn = prob.initial_displacement.coeffs[i];
    const double vn = prob.terminal.coeffs[i];
    const double zn = -(m.q * xn + cfg.mass / mp.lambda * vn) / m.r;
    sol.z_star.coeffs[i] = zn;
    sol.initial_velocity.coeffs[i] = mp.lambda_mu / cfg.mass * (m.p * xn + m.q * zn);
  }
  std::sort(sol.singular_modes.begin(), sol.singular_modes.end());
  return sol;
}

TpbvpSolution solve(const TpbvpProblem& prob) {
  return prob.kind == TerminalData::Displacement ? solve_displacement(prob)
                                                 : solve_velocity(prob);
}

SpectralVector velocity_one_shot(const TpbvpProblem& prob) {
  check_problem(prob);
  if (prob.kind != TerminalData::Velocity)
    throw std::invalid_argument("velocity_one_shot: terminal kind must be Velocity");
  if (prob.mu > 0.0 &&
      prob.horizon >= concave_horizon(prob.mu, prob.cfg.mass, prob.cfg.stiffness))
    throw std::domain_error("velocity_one_shot: horizon must be below t_bar^mu for mu > 0");
  const BasisConfig& cfg = prob.cfg;
  const FundamentalSolution fs = make_fundamental_solution(prob.mu, kInf, prob.horizon, cfg);

  SpectralVector w0(cfg);
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, prob.mu, cfg);
    const double phase = mp.omega * prob.horizon;
    if (std::abs(std::sin(phase)) < kSinTol || std::abs(std::cos(phase)) < kSinTol) continue;
    const ModeTriple& m = fs.mode(n);
    const double xn = prob.initial_displacement.coeffs[i];
    const double vn = prob.terminal.coeffs[i];
    w0.coeffs[i] = mp.lambda_mu / cfg.mass *
                   ((m.p - m.q * m.q / m.r) * xn - cfg.mass / mp.lambda * (m.q / m.r) * vn);
  }
  return w0;
}

SpectralVector optimal_feedback(const FundamentalSolution& fs, double s,
                                const SpectralVector& x_now, const SpectralVector& z_star) {
  if (!fs.is_infinite())
    throw std::invalid_argument("optimal_feedback: requires the hard-constraint limit solution");
  require_same_basis(fs.basis, x_now.basis, "optimal_feedback");
  require_same_basis(fs.basis, z_star.basis, "optimal_feedback");
  const double remaining = fs.horizon - s;
  if (s < 0.0 || remaining < delta_min(fs.basis))
    throw std::domain_error(
        "optimal_feedback: feedback undefined within delta_min of the final time");

  const BasisConfig& cfg = fs.basis;
  SpectralVector w(cfg);
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeTriple m = eig_pqr_infty(n, remaining, fs.mu, cfg);
    const ModeParams mp = mode_params(n, fs.mu, cfg);
    w.coeffs[i] = mp.lambda_mu / cfg.mass * (m.p * x_now.coeffs[i] + m.q * z_star.coeffs[i]);
  }
  return w;
}

}  // namespace waveaction
