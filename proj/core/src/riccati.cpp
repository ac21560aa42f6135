#include "waveaction/riccati.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "waveaction/errors.hpp"
#include "waveaction/payoff.hpp"

namespace waveaction {

double delta_min(const BasisConfig& cfg) {
  return 1e-6 * cfg.length * std::sqrt(cfg.mass / cfg.stiffness);
}

ModeParams mode_params(int n, double mu, const BasisConfig& cfg) {
  ModeParams mp;
  mp.n = n;
  mp.lambda = lambda_n(n, cfg);
  mp.lambda_mu = mp.lambda / (1.0 + mu * mu * mp.lambda);
  mp.alpha = std::sqrt(mp.lambda_mu / (cfg.mass * cfg.stiffness));
  mp.omega = std::sqrt(cfg.stiffness * mp.lambda_mu / cfg.mass);
  mp.m_mu = 1.0 / std::sqrt(mp.lambda_mu);
  return mp;
}

double cbar(double m, double kappa) {
  if (!(m > 0.0) || !(kappa > 0.0)) throw std::invalid_argument("cbar: m, kappa must be > 0");
  return std::sqrt(m * kappa) * std::tan(std::sqrt(2.0));
}

ModeTriple eig_pqr_finite(int n, double t, double mu, double c, const BasisConfig& cfg) {
  if (!(mu > 0.0) || mu > 1.0)
    throw std::domain_error("eig_pqr_finite: mu must lie in (0, 1]");
  if (!(c > cbar(cfg.mass, cfg.stiffness)))
    throw std::domain_error("eig_pqr_finite: penalty too small, need c > cbar");
  const double tbar = concave_horizon(mu, cfg.mass, cfg.stiffness);
  if (t < 0.0 || t >= tbar)
    throw std::domain_error("eig_pqr_finite: horizon outside [0, t_bar^mu)");

  const ModeParams mp = mode_params(n, mu, cfg);
  // General form via theta_n = arctan(1/(alpha_n m_n c)); with the M_mu
  // weights used here, alpha_n m_n = 1/sqrt(m kappa) exactly, so theta is
  // mode-free.
  const double u = 1.0 / (mp.alpha * mp.m_mu * c);
  const double theta = std::atan(u);
  const double phase = mp.omega * t + theta;
  const double shrink = 1.0 / (1.0 + u * u);

  ModeTriple out;
  out.p = -(1.0 / mp.alpha) / std::tan(phase);
  out.q = (1.0 / mp.alpha) * std::sqrt(shrink) / std::sin(phase);
  out.r = -(1.0 / mp.alpha) * shrink * (u + 1.0 / std::tan(phase));
  return out;
}

ModeTriple eig_pqr_infty(int n, double t, double mu, const BasisConfig& cfg) {
  if (mu < 0.0 || mu > 1.0) throw std::domain_error("eig_pqr_infty: mu must lie in [0, 1]");
  if (t < delta_min(cfg))
    throw std::domain_error("eig_pqr_infty: horizon below delta_min exclusion window");

  const ModeParams mp = mode_params(n, mu, cfg);
  const double s = std::sin(mp.omega * t);
  if (std::abs(s) < kSinTol)
    throw ConjugatePointError({n}, "eig_pqr_infty: conjugate point at mode " + std::to_string(n));
  const double cotv = std::cos(mp.omega * t) / s;
  ModeTriple out;
  out.p = -(1.0 / mp.alpha) * cotv;
  out.q = (1.0 / mp.alpha) / s;
  out.r = out.p;
  return out;
}

bool FundamentalSolution::is_infinite() const { return std::isinf(penalty_c); }

FundamentalSolution make_fundamental_solution(double mu, double c, double t,
                                              const BasisConfig& cfg) {
  FundamentalSolution fs;
  fs.basis = cfg;
  fs.mu = mu;
  fs.penalty_c = c;
  fs.horizon = t;
  fs.modes.resize(static_cast<size_t>(cfg.truncation));
  if (std::isinf(c)) {
    if (mu < 0.0 || mu > 1.0)
      throw std::domain_error("make_fundamental_solution: mu must lie in [0, 1]");
    if (t < delta_min(cfg))
      throw std::domain_error("make_fundamental_solution: horizon below delta_min");
    for (int n = 1; n <= cfg.truncation; ++n) {
      const ModeParams mp = mode_params(n, mu, cfg);
      const double s = std::sin(mp.omega * t);
      if (std::abs(s) < kSinTol) {
        fs.singular_modes.push_back(n);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        fs.modes[static_cast<size_t>(n - 1)] = {nan, nan, nan};
        continue;
      }
      fs.modes[static_cast<size_t>(n - 1)] = eig_pqr_infty(n, t, mu, cfg);
    }
  } else {
    for (int n = 1; n <= cfg.truncation; ++n)
      fs.modes[static_cast<size_t>(n - 1)] = eig_pqr_finite(n, t, mu, c, cfg);
  }
  return fs;
}

double eval_W(const FundamentalSolution& fs, const SpectralVector& x, const SpectralVector& z) {
  require_same_basis(fs.basis, x.basis, "eval_W");
  require_same_basis(fs.basis, z.basis, "eval_W");
  if (!fs.singular_modes.empty()) {
    std::vector<int> touched;
    for (int n : fs.singular_modes) {
      const size_t i = static_cast<size_t>(n - 1);
      if (x.coeffs[i] != 0.0 || z.coeffs[i] != 0.0) touched.push_back(n);
    }
    if (!touched.empty())
      throw ConjugatePointError(touched, "eval_W: data on conjugate-point modes");
  }
  double w = 0.0;
  for (int n = 1; n <= fs.basis.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const double xn = x.coeffs[i];
    const double zn = z.coeffs[i];
    if (xn == 0.0 && zn == 0.0) continue;
    const ModeTriple& m = fs.modes[i];
    w += 0.5 * m.p * xn * xn + m.q * xn * zn + 0.5 * m.r * zn * zn;
  }
  return w;
}

RiccatiResidual riccati_residual(const FundamentalSolution& fs, int n, double t, double h) {
  if (fs.is_infinite())
    throw std::invalid_argument("riccati_residual: requires a finite-penalty solution");
  if (!(h > 0.0)) throw std::invalid_argument("riccati_residual: h must be > 0");
  const double tbar = concave_horizon(fs.mu, fs.basis.mass, fs.basis.stiffness);
  if (t - h < 0.0 || t + h >= tbar)
    throw std::domain_error("riccati_residual: t +/- h outside the validity window");

  const ModeTriple lo = eig_pqr_finite(n, t - h, fs.mu, fs.penalty_c, fs.basis);
  const ModeTriple mid = eig_pqr_finite(n, t, fs.mu, fs.penalty_c, fs.basis);
  const ModeTriple hi = eig_pqr_finite(n, t + h, fs.mu, fs.penalty_c, fs.basis);

  const ModeParams mp = mode_params(n, fs.mu, fs.basis);
  const double g = mp.lambda_mu / fs.basis.mass;
  RiccatiResidual res;
  res.p = (hi.p - lo.p) / (2.0 * h) - (fs.basis.stiffness + g * mid.p * mid.p);
  res.q = (hi.q - lo.q) / (2.0 * h) - g * mid.p * mid.q;
  res.r = (hi.r - lo.r) / (2.0 * h) - g * mid.q * mid.q;
  return res;
}

double verification_hamiltonian(const SpectralVector& x, const SpectralVector& p, double mu,
                                const BasisConfig& cfg) {
  require_same_basis(x.basis, cfg, "verification_hamiltonian");
  require_same_basis(p.basis, cfg, "verification_hamiltonian");
  double hval = 0.0;
  for (int n = 1; n <= cfg.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, mu, cfg);
    hval += 0.5 * cfg.stiffness * x.coeffs[i] * x.coeffs[i] +
            0.5 / cfg.mass * mp.lambda_mu * p.coeffs[i] * p.coeffs[i];
  }
  return hval;
}

void write_mode_table(const FundamentalSolution& fs, std::ostream& out) {
  out << "n,lambda,alpha,omega,p,q,r\n";
  char line[256];
  for (int n = 1; n <= fs.basis.truncation; ++n) {
    const ModeParams mp = mode_params(n, fs.mu, fs.basis);
    const ModeTriple& m = fs.mode(n);
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, mp.lambda,
                  mp.alpha, mp.omega, m.p, m.q, m.r);
    out << line;
  }
}

}  // namespace waveaction
