#pragma once

#include <iosfwd>
#include <limits>
#include <vector>

#include "waveaction/basis.hpp"

namespace waveaction {

/// |sin(omega_n t)| below this flags mode n as singular (conjugate point).
inline constexpr double kSinTol = 1e-9;

/// Shortest admissible horizon for the hard-constraint limit solution,
/// 1e-6 * L * sqrt(m/kappa); the limit eigenvalues diverge as t -> 0+.
double delta_min(const BasisConfig& cfg);

/// Per-mode spectral quantities:
///   lambda_mu = lambda_n / (1 + mu^2 lambda_n)
///   alpha     = sqrt(lambda_mu / (m kappa))
///   omega     = sqrt(kappa lambda_mu / m)
///   m_mu      = sqrt((1 + mu^2 lambda_n) / lambda_n) = 1 / sqrt(lambda_mu)
/// Identities: omega = kappa * alpha and alpha * m_mu = 1 / sqrt(m kappa).
struct ModeParams {
  int n = 0;
  double lambda = 0.0;
  double lambda_mu = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double m_mu = 0.0;
};

ModeParams mode_params(int n, double mu, const BasisConfig& cfg);

/// Penalty threshold c_bar = sqrt(m kappa) tan(sqrt 2). Finite-penalty
/// eigenvalue trajectories are valid for c > c_bar.
double cbar(double m, double kappa);

struct ModeTriple {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

/// Finite-penalty eigenvalues at horizon t, valid for mu in (0,1],
/// c > c_bar, t in [0, t_bar^mu):
///   p = -(1/a) cot(w t + theta),  theta = arctan(sqrt(m kappa)/c)
///   q = +(1/a) (1 + m kappa/c^2)^{-1/2} / sin(w t + theta)
///   r = -(1/a) (1 + m kappa/c^2)^{-1} [sqrt(m kappa)/c + cot(w t + theta)]
ModeTriple eig_pqr_finite(int n, double t, double mu, double c, const BasisConfig& cfg);

/// Hard-constraint limit (c -> infinity): p = r = -(1/a) cot(w t),
/// q = +(1/a)/sin(w t). mu = 0 is evaluated directly (lambda^0 = lambda).
/// Throws ConjugatePointError when |sin(w_n t)| < kSinTol.
ModeTriple eig_pqr_infty(int n, double t, double mu, const BasisConfig& cfg);

/// The (mu, c or infinity, t)-parameterized eigenvalue triples of the
/// bi-quadratic W(t,x,z) = 1/2 <x,Px> + <x,Qz> + 1/2 <z,Rz>. Singular
/// modes (infinite-c conjugate points) are recorded, not fatal.
struct FundamentalSolution {
  BasisConfig basis;
  double mu = 0.0;
  double penalty_c = std::numeric_limits<double>::infinity();
  double horizon = 0.0;
  std::vector<ModeTriple> modes;
  std::vector<int> singular_modes;

  bool is_infinite() const;
  const ModeTriple& mode(int n) const { return modes[static_cast<size_t>(n - 1)]; }
};

/// c = +infinity selects the hard-constraint limit.
FundamentalSolution make_fundamental_solution(double mu, double c, double t,
                                              const BasisConfig& cfg);

/// W = 1/2 sum p_n x_n^2 + sum q_n x_n z_n + 1/2 sum r_n z_n^2.
/// Throws ConjugatePointError if a singular mode carries data.
double eval_W(const FundamentalSolution& fs, const SpectralVector& x, const SpectralVector& z);

struct RiccatiResidual {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

/// Centered finite difference of each finite-c eigenvalue trajectory minus
/// its ODE right-hand side:
///   p' = kappa + (lambda_mu/m) p^2,  q' = (lambda_mu/m) p q,
///   r' = (lambda_mu/m) q^2.
RiccatiResidual riccati_residual(const FundamentalSolution& fs, int n, double t, double h);

/// H(x,p) = (kappa/2) sum x_n^2 + (1/(2m)) sum lambda_n^mu p_n^2.
double verification_hamiltonian(const SpectralVector& x, const SpectralVector& p, double mu,
                                const BasisConfig& cfg);

/// Per-mode eigenvalue dump, CSV columns: n, lambda, alpha, omega, p, q, r.
void write_mode_table(const FundamentalSolution& fs, std::ostream& out);

}  // namespace waveaction
