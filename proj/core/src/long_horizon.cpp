#include "waveaction/long_horizon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "waveaction/errors.hpp"
#include "waveaction/payoff.hpp"
#include "waveaction/riccati.hpp"

namespace waveaction {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSegments = 1000000;

}  // namespace

bool plan_admissible(const BasisConfig& cfg, double mu, double t, int n_segments) {
  if (n_segments < 1 || !(t > 0.0)) return false;
  const double tau = t / static_cast<double>(n_segments);
  if (tau < delta_min(cfg)) return false;
  if (mu > 0.0 && tau >= concave_horizon(mu, cfg.mass, cfg.stiffness)) return false;
  for (int n = 1; n <= cfg.truncation; ++n) {
    const ModeParams mp = mode_params(n, mu, cfg);
    if (std::abs(std::sin(mp.omega * tau)) <= kSinTol) return false;
  }
  return true;
}

ConcatenationPlan make_plan(const BasisConfig& cfg, double mu, double t, int n_segments) {
  if (mu < 0.0 || mu > 1.0) throw std::domain_error("make_plan: mu must lie in [0, 1]");
  if (!(t > 0.0)) throw std::domain_error("make_plan: horizon must be > 0");
  if (n_segments < 1) throw std::domain_error("make_plan: n_segments must be >= 1");
  if (!plan_admissible(cfg, mu, t, n_segments))
    throw std::domain_error("make_plan: segment horizon inadmissible (t_bar or conjugate point)");
  ConcatenationPlan plan;
  plan.cfg = cfg;
  plan.mu = mu;
  plan.horizon = t;
  plan.n_segments = n_segments;
  plan.tau = t / static_cast<double>(n_segments);
  return plan;
}

ConcatenationPlan auto_plan(const BasisConfig& cfg, double mu, double t, int min_segments) {
  if (mu < 0.0 || mu > 1.0) throw std::domain_error("auto_plan: mu must lie in [0, 1]");
  if (!(t > 0.0)) throw std::domain_error("auto_plan: horizon must be > 0");
  int n_t = std::max(1, min_segments);
  if (mu > 0.0) {
    const double tbar = concave_horizon(mu, cfg.mass, cfg.stiffness);
    n_t = std::max(n_t, static_cast<int>(std::floor(t / tbar)) + 1);
  }
  for (; n_t <= kMaxSegments; ++n_t) {
    if (plan_admissible(cfg, mu, t, n_t)) return make_plan(cfg, mu, t, n_t);
  }
  throw std::runtime_error("auto_plan: no admissible segment count up to 1e6");
}

namespace {

// The symmetric Toeplitz tridiagonal [e, d, e] of size m has eigenvalues
// d + 2e cos(j pi / (m+1)), j = 1..m; the smallest magnitude sits at the
// grid angle nearest to arccos(-d/(2e)) (or at an endpoint when that ratio
// falls outside [-1, 1]).
double tridiag_min_eigenvalue(double d, double e, int m) {
  constexpr double pi = std::numbers::pi;
  const double ratio = std::clamp(-d / (2.0 * e), -1.0, 1.0);
  const int j_near = static_cast<int>(std::lround(std::acos(ratio) * (m + 1) / pi));
  double smallest = std::numeric_limits<double>::infinity();
  for (int j = std::max(1, j_near - 1); j <= std::min(m, j_near + 1); ++j)
    smallest = std::min(smallest, std::abs(d + 2.0 * e * std::cos(pi * j / (m + 1))));
  return smallest;
}

// Elimination with partial pivoting on [e, d, e]; the row swap introduces a
// second superdiagonal. Leading principal minors of this matrix can vanish
// while the matrix itself is regular, so plain Thomas is not enough. rhs is
// overwritten with the solution; returns false on a zero pivot.
bool tridiag_solve_pivoted(double d, double e, std::vector<double>& rhs, double tol) {
  const int m = static_cast<int>(rhs.size());
  std::vector<double> diag(static_cast<size_t>(m), d);
  std::vector<double> sup1(static_cast<size_t>(m), 0.0);
  std::vector<double> sup2(static_cast<size_t>(m), 0.0);
  for (int i = 0; i + 1 < m; ++i) sup1[static_cast<size_t>(i)] = e;

  for (int k = 0; k + 1 < m; ++k) {
    const size_t ik = static_cast<size_t>(k);
    double sub = e;  // row k+1 is untouched; its column-k entry is e
    if (std::abs(sub) > std::abs(diag[ik])) {
      std::swap(diag[ik], sub);
      std::swap(sup1[ik], diag[ik + 1]);
      std::swap(sup2[ik], sup1[ik + 1]);
      std::swap(rhs[ik], rhs[ik + 1]);
    }
    if (std::abs(diag[ik]) <= tol) return false;
    const double w = sub / diag[ik];
    diag[ik + 1] -= w * sup1[ik];
    sup1[ik + 1] -= w * sup2[ik];
    rhs[ik + 1] -= w * rhs[ik];
  }
  if (std::abs(diag[static_cast<size_t>(m - 1)]) <= tol) return false;
  for (int k = m - 1; k >= 0; --k) {
    const size_t ik = static_cast<size_t>(k);
    double acc = rhs[ik];
    if (k + 1 < m) acc -= sup1[ik] * rhs[ik + 1];
    if (k + 2 < m) acc -= sup2[ik] * rhs[ik + 2];
    rhs[ik] = acc / diag[ik];
  }
  return true;
}

}  // namespace

IntermediateStates solve_intermediate_states(const ConcatenationPlan& plan,
                                             const SpectralVector& x, const SpectralVector& z) {
  require_same_basis(plan.cfg, x.basis, "solve_intermediate_states");
  require_same_basis(plan.cfg, z.basis, "solve_intermediate_states");

  IntermediateStates out;
  const int interior = plan.n_segments - 1;
  if (interior < 1) return out;

  const BasisConfig& cfg = plan.cfg;
  out.states.assign(static_cast<size_t>(interior), SpectralVector(cfg));

  std::vector<double> rhs(static_cast<size_t>(interior));
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeTriple m = eig_pqr_infty(n, plan.tau, plan.mu, cfg);
    const double d = m.p + m.r;  // = -(2/alpha) cot(omega tau)
    const double e = m.q;

    const double tol = 1e-12 * std::max(std::abs(d) + 2.0 * std::abs(e), 1.0);
    if (tridiag_min_eigenvalue(d, e, interior) <= tol) {
      out.singular_modes.push_back(n);
      continue;  // coefficients stay zero for this mode
    }

    std::fill(rhs.begin(), rhs.end(), 0.0);
    rhs.front() += -e * x.coeffs[i];
    rhs.back() += -e * z.coeffs[i];
    if (!tridiag_solve_pivoted(d, e, rhs, tol)) {
      out.singular_modes.push_back(n);
      continue;
    }
    for (int k = 0; k < interior; ++k)
      out.states[static_cast<size_t>(k)].coeffs[i] = rhs[static_cast<size_t>(k)];
  }
  return out;
}

double stat_value(const ConcatenationPlan& plan, const SpectralVector& x,
                  const SpectralVector& z) {
  require_same_basis(plan.cfg, x.basis, "stat_value");
  require_same_basis(plan.cfg, z.basis, "stat_value");
  if (plan.n_segments == 1) {
    const FundamentalSolution fs =
        make_fundamental_solution(plan.mu, kInf, plan.horizon, plan.cfg);
    return eval_W(fs, x, z);
  }
  const IntermediateStates inter = solve_intermediate_states(plan, x, z);
  if (!inter.singular_modes.empty()) {
    std::vector<int> touched;
    for (int n : inter.singular_modes) {
      const size_t i = static_cast<size_t>(n - 1);
      if (x.coeffs[i] != 0.0 || z.coeffs[i] != 0.0) touched.push_back(n);
    }
    if (!touched.empty())
      throw ConjugatePointError(touched, "stat_value: singular tridiagonal modes carry data");
  }
  const FundamentalSolution seg = make_fundamental_solution(plan.mu, kInf, plan.tau, plan.cfg);
  double theta = 0.0;
  const SpectralVector* prev = &x;
  for (const SpectralVector& state : inter.states) {
    theta += eval_W(seg, *prev, state);
    prev = &state;
  }
  theta += eval_W(seg, *prev, z);
  return theta;
}

double stationarity_residual(const ConcatenationPlan& plan, const SpectralVector& x,
                             const std::vector<SpectralVector>& zeta, const SpectralVector& z) {
  require_same_basis(plan.cfg, x.basis, "stationarity_residual");
  require_same_basis(plan.cfg, z.basis, "stationarity_residual");
  const int interior = plan.n_segments - 1;
  if (static_cast<int>(zeta.size()) != interior)
    throw std::invalid_argument("stationarity_residual: need n_segments - 1 interior states");
  if (interior < 1) return 0.0;

  const BasisConfig& cfg = plan.cfg;
  double acc = 0.0;
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeTriple m = eig_pqr_infty(n, plan.tau, plan.mu, cfg);
    const double d = m.p + m.r;
    const double e = m.q;
    for (int k = 0; k < interior; ++k) {
      const double left = (k == 0) ? x.coeffs[i] : zeta[static_cast<size_t>(k - 1)].coeffs[i];
      const double right =
          (k == interior - 1) ? z.coeffs[i] : zeta[static_cast<size_t>(k + 1)].coeffs[i];
      const double g = e * left + d * zeta[static_cast<size_t>(k)].coeffs[i] + e * right;
      acc += g * g;
    }
  }
  return std::sqrt(acc);
}

}  // namespace waveaction
