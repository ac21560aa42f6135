#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "waveaction/errors.hpp"
#include "waveaction/operators.hpp"
#include "waveaction/payoff.hpp"
#include "waveaction/riccati.hpp"

using namespace waveaction;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("cbar") {
  CHECK(cbar(1.0, 1.0) == doctest::Approx(std::tan(std::sqrt(2.0))).epsilon(1e-15));
  CHECK(cbar(4.0, 1.0) == doctest::Approx(2.0 * std::tan(std::sqrt(2.0))).epsilon(1e-15));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(0.5, 3.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double m = unif(rng), kappa = unif(rng), s = unif(rng);
    CHECK(cbar(s * s * m, kappa) == doctest::Approx(s * cbar(m, kappa)).epsilon(1e-13));
  }
}

TEST_CASE("mode parameter identities") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double L : {0.5, 1.0, 2.0}) {
    const double m = 0.5 + 2.0 * unif(rng);
    const double kappa = 0.5 + 2.0 * unif(rng);
    const BasisConfig cfg(L, 16, m, kappa);
    const double mu = unif(rng);
    for (int n = 1; n <= 16; ++n) {
      const ModeParams mp = mode_params(n, mu, cfg);
      CHECK(mp.lambda_mu ==
            doctest::Approx(mp.lambda / (1.0 + mu * mu * mp.lambda)).epsilon(1e-15));
      CHECK(mp.alpha * mp.alpha == doctest::Approx(mp.lambda_mu / (m * kappa)).epsilon(1e-14));
      CHECK(mp.omega * mp.omega == doctest::Approx(kappa * mp.lambda_mu / m).epsilon(1e-14));
      CHECK(mp.omega == doctest::Approx(kappa * mp.alpha).epsilon(1e-14));
      CHECK(mp.alpha * mp.m_mu == doctest::Approx(1.0 / std::sqrt(m * kappa)).epsilon(1e-14));
    }
  }
}

TEST_CASE("finite-penalty eigenvalues: initial conditions and window") {
  const BasisConfig cfg(1.0, 32, 1.0, 1.0);
  const double mu = 0.4;
  const double c = 20.0 * cbar(1.0, 1.0);

  SUBCASE("(p,q,r)(0) = (-c, +c, -c) m_n^mu") {
    for (int n = 1; n <= 32; ++n) {
      const ModeParams mp = mode_params(n, mu, cfg);
      const ModeTriple t0 = eig_pqr_finite(n, 0.0, mu, c, cfg);
      CHECK(t0.p == doctest::Approx(-c * mp.m_mu).epsilon(1e-12));
      CHECK(t0.q == doctest::Approx(+c * mp.m_mu).epsilon(1e-12));
      CHECK(t0.r == doctest::Approx(-c * mp.m_mu).epsilon(1e-12));
    }
  }

  SUBCASE("r(0) reduces to -c m_n at m = kappa = 1 (symbolic simplification)") {
    // -(1/a)(1/(1+1/c^2))[1/c + c] = -(1/a) c collapses since a m_n = 1.
    const ModeParams mp = mode_params(3, mu, cfg);
    const double direct = -(1.0 / mp.alpha) * (1.0 / (1.0 + 1.0 / (c * c))) * (1.0 / c + c);
    CHECK(eig_pqr_finite(3, 0.0, mu, c, cfg).r == doctest::Approx(direct).epsilon(1e-13));
    CHECK(direct == doctest::Approx(-c * mp.m_mu).epsilon(1e-13));
  }

  SUBCASE("domain errors") {
    const double tbar = concave_horizon(mu, 1.0, 1.0);
    CHECK_THROWS_AS(eig_pqr_finite(1, tbar, mu, c, cfg), std::domain_error);
    CHECK_THROWS_AS(eig_pqr_finite(1, 0.1, mu, 0.5 * cbar(1.0, 1.0), cfg), std::domain_error);
    CHECK_THROWS_AS(eig_pqr_finite(1, 0.1, 0.0, c, cfg), std::domain_error);
    CHECK_THROWS_AS(eig_pqr_finite(1, 0.1, 1.5, c, cfg), std::domain_error);
  }
}

TEST_CASE("Riccati ODE residuals shrink at second order") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const BasisConfig cfg(1.0, 64, 1.0, 1.0);
  for (int trial = 0; trial < 24; ++trial) {
    const double mu = 0.3 + 0.7 * unif(rng);
    const double tbar = concave_horizon(mu, 1.0, 1.0);
    const double t = (0.3 + 0.5 * unif(rng)) * tbar;
    const double c = cbar(1.0, 1.0) * (1.5 + 15.0 * unif(rng));
    const int n = 1 + static_cast<int>(unif(rng) * 63);
    const FundamentalSolution fs = make_fundamental_solution(mu, c, t, cfg);

    const double h0 = 4e-4 * tbar;
    const RiccatiResidual rh = riccati_residual(fs, n, t, h0);
    const RiccatiResidual rh2 = riccati_residual(fs, n, t, 0.5 * h0);
    // Richardson slope oracle: each residual is O(h^2).
    for (auto pick : {+[](const RiccatiResidual& r) { return r.p; },
                      +[](const RiccatiResidual& r) { return r.q; },
                      +[](const RiccatiResidual& r) { return r.r; }}) {
      const double order = std::log2(std::abs(pick(rh)) / std::abs(pick(rh2)));
      CHECK(order >= 1.9);
      CHECK(order <= 2.1);
    }
    const RiccatiResidual tiny = riccati_residual(fs, n, t, 1e-5);
    CHECK(std::abs(tiny.p) < 1e-6);
    CHECK(std::abs(tiny.q) < 1e-6);
    CHECK(std::abs(tiny.r) < 1e-6);
  }
}

TEST_CASE("initial slope and log-derivative identities") {
  const BasisConfig cfg(1.0, 8, 1.0, 1.0);
  const double mu = 0.5;
  const double c = 10.0 * cbar(1.0, 1.0);
  const double tbar = concave_horizon(mu, 1.0, 1.0);

  SUBCASE("p'(0) = kappa + (lambda_mu/m) c^2 m_n^2") {
    for (int n = 1; n <= 8; ++n) {
      const ModeParams mp = mode_params(n, mu, cfg);
      const double h = 1e-6 * tbar;
      // Second-order one-sided difference at t = 0.
      const double p0 = eig_pqr_finite(n, 0.0, mu, c, cfg).p;
      const double p1 = eig_pqr_finite(n, h, mu, c, cfg).p;
      const double p2 = eig_pqr_finite(n, 2.0 * h, mu, c, cfg).p;
      const double fd = (-3.0 * p0 + 4.0 * p1 - p2) / (2.0 * h);
      const double want = 1.0 + mp.lambda_mu * c * c * mp.m_mu * mp.m_mu;
      CHECK(fd == doctest::Approx(want).epsilon(1e-6));
    }
  }

  SUBCASE("d/dt log|q| = (lambda_mu/m) p") {
    for (int n = 1; n <= 8; ++n) {
      const ModeParams mp = mode_params(n, mu, cfg);
      const double t = 0.5 * tbar;
      const double h = 1e-6 * tbar;
      const double lo = std::log(std::abs(eig_pqr_finite(n, t - h, mu, c, cfg).q));
      const double hi = std::log(std::abs(eig_pqr_finite(n, t + h, mu, c, cfg).q));
      const double fd = (hi - lo) / (2.0 * h);
      const double want = mp.lambda_mu * eig_pqr_finite(n, t, mu, c, cfg).p;
      CHECK(fd == doctest::Approx(want).epsilon(1e-6));
    }
  }
}

TEST_CASE("hard-constraint limit eigenvalues") {
  const BasisConfig cfg(1.0, 4, 1.0, 1.0);

  SUBCASE("quarter period: p = r = 0, q = 1/alpha") {
    // mu=0, m=kappa=L=1, n=1, t=1/2 puts omega_1 t = pi/2.
    const ModeTriple m = eig_pqr_infty(1, 0.5, 0.0, cfg);
    CHECK(std::abs(m.p) < 1e-12);
    CHECK(std::abs(m.r) < 1e-12);
    CHECK(m.q == doctest::Approx(1.0 / kPi).epsilon(1e-14));
  }

  SUBCASE("p and r coincide for all modes and horizons") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 64; ++trial) {
      const double mu = unif(rng);
      const double t = 0.05 + 0.6 * unif(rng);
      const int n = 1 + static_cast<int>(unif(rng) * 3);
      const ModeParams mp = mode_params(n, mu, cfg);
      if (std::abs(std::sin(mp.omega * t)) < 1e-6) continue;
      const ModeTriple m = eig_pqr_infty(n, t, mu, cfg);
      CHECK(m.p == m.r);
    }
  }

  SUBCASE("conjugate point raises, delta window enforced") {
    CHECK_THROWS_AS(eig_pqr_infty(2, 0.5, 0.0, cfg), ConjugatePointError);  // omega_2 t = pi
    CHECK_THROWS_AS(eig_pqr_infty(1, 1e-9, 0.0, cfg), std::domain_error);
  }

  SUBCASE("finite-c converges to the limit at rate 1/c") {
    const double mu = 0.5;
    const double tbar = concave_horizon(mu, 1.0, 1.0);
    const double delta = 0.1 * tbar;
    auto supgap = [&](double c) {
      double worst = 0.0;
      for (int n = 1; n <= 4; ++n) {
        for (int k = 0; k <= 20; ++k) {
          const double t = delta + (0.95 * tbar - delta) * k / 20.0;
          const ModeTriple fin = eig_pqr_finite(n, t, mu, c, cfg);
          const ModeTriple lim = eig_pqr_infty(n, t, mu, cfg);
          worst = std::max({worst, std::abs(fin.p - lim.p), std::abs(fin.q - lim.q),
                            std::abs(fin.r - lim.r)});
        }
      }
      return worst;
    };
    const double c0 = 100.0 * cbar(1.0, 1.0);
    const double k1 = supgap(c0) * c0;
    const double k2 = supgap(2.0 * c0) * (2.0 * c0);
    CHECK(k2 / k1 == doctest::Approx(1.0).epsilon(0.2));  // fitted K stable under doubling
  }
}

TEST_CASE("fundamental solution assembly and eval_W") {
  const BasisConfig cfg(1.0, 3, 1.0, 1.0);

  SUBCASE("zero data evaluates to zero") {
    const auto fs = make_fundamental_solution(0.0, kInf, 0.3, cfg);
    CHECK(eval_W(fs, SpectralVector(cfg), SpectralVector(cfg)) == 0.0);
  }

  SUBCASE("quarter period kills the r term") {
    const auto fs = make_fundamental_solution(0.0, kInf, 0.5, cfg);
    // mode 2 is singular at t = 1/2 (omega_2 t = pi); keep data off it.
    SpectralVector z(cfg);
    z.coeffs[0] = 1.0;
    CHECK(std::abs(eval_W(fs, SpectralVector(cfg), z)) < 1e-12);
  }

  SUBCASE("singular modes are recorded and guarded") {
    const auto fs = make_fundamental_solution(0.0, kInf, 0.5, cfg);
    REQUIRE(fs.singular_modes == std::vector<int>{2});
    SpectralVector z(cfg);
    z.coeffs[1] = 1.0;
    CHECK_THROWS_AS(eval_W(fs, SpectralVector(cfg), z), ConjugatePointError);
  }

  SUBCASE("W is non-increasing in the penalty weight") {
    std::mt19937_64 rng(10);
    const double mu = 0.6;
    const double t = 0.5 * concave_horizon(mu, 1.0, 1.0);
    const SpectralVector x = testutil::random_vector(cfg, rng);
    const SpectralVector z = testutil::random_vector(cfg, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double c : {8.0, 16.0, 64.0, 512.0}) {
      const double w = eval_W(make_fundamental_solution(mu, c, t, cfg), x, z);
      CHECK(w <= prev + 1e-12);
      prev = w;
    }
    // and the hard-constraint limit sits below all finite-c values
    CHECK(eval_W(make_fundamental_solution(mu, kInf, t, cfg), x, z) <= prev + 1e-12);
  }

  SUBCASE("straight-line suboptimality lower bound") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 32; ++trial) {
      const double mu = 0.3 + 0.5 * (trial / 32.0);
      const double t = 0.6 * concave_horizon(mu, 1.0, 1.0);
      const SpectralVector x = testutil::random_vector(cfg, rng);
      const SpectralVector z = testutil::random_vector(cfg, rng);
      const auto fs = make_fundamental_solution(mu, kInf, t, cfg);
      const double lower = -(1.0 / (2.0 * t)) * (z - x).norm_half() * (z - x).norm_half();
      CHECK(eval_W(fs, x, z) >= lower - 1e-10);
    }
  }
}

TEST_CASE("verification Hamiltonian and the HJB identity") {
  const BasisConfig cfg(1.0, 6, 1.0, 1.0);

  SUBCASE("closed forms") {
    CHECK(verification_hamiltonian(SpectralVector(cfg), SpectralVector(cfg), 0.3, cfg) == 0.0);
    SpectralVector p(cfg);
    p.coeffs[0] = 1.0;
    CHECK(verification_hamiltonian(SpectralVector(cfg), p, 0.0, cfg) ==
          doctest::Approx(0.5 * kPi * kPi).epsilon(1e-14));
  }

  SUBCASE("dW/dt = H(x, grad_x W) via finite differences") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const double mu = 0.3 + 0.7 * unif(rng);
      const double tbar = concave_horizon(mu, 1.0, 1.0);
      const double t = (0.3 + 0.5 * unif(rng)) * tbar;
      const double c = cbar(1.0, 1.0) * (2.0 + 8.0 * unif(rng));
      const SpectralVector x = testutil::random_vector(cfg, rng, 2.0);
      const SpectralVector z = testutil::random_vector(cfg, rng, 2.0);

      const double ht = 1e-6 * tbar;
      const double dwdt = (eval_W(make_fundamental_solution(mu, c, t + ht, cfg), x, z) -
                           eval_W(make_fundamental_solution(mu, c, t - ht, cfg), x, z)) /
                          (2.0 * ht);
      const auto fs = make_fundamental_solution(mu, c, t, cfg);
      SpectralVector grad(cfg);
      for (int i = 0; i < cfg.truncation; ++i) {
        SpectralVector xp = x, xm = x;
        xp.coeffs[static_cast<size_t>(i)] += 1e-4;
        xm.coeffs[static_cast<size_t>(i)] -= 1e-4;
        grad.coeffs[static_cast<size_t>(i)] = (eval_W(fs, xp, z) - eval_W(fs, xm, z)) / 2e-4;
      }
      CHECK(std::abs(dwdt - verification_hamiltonian(x, grad, mu, cfg)) < 1e-5);
    }
  }

  SUBCASE("W(0,x,z) equals the quadratic terminal payoff through K_mu") {
    std::mt19937_64 rng(15);
    const double mu = 0.45;
    const double c = 12.0 * cbar(1.0, 1.0);
    const SpectralVector x = testutil::random_vector(cfg, rng);
    const SpectralVector z = testutil::random_vector(cfg, rng);
    const auto fs0 = make_fundamental_solution(mu, c, 0.0, cfg);
    const auto K = make_operator(OperatorKind::K_mu, mu, cfg);
    const SpectralVector kd = op_apply(K, x - z);
    const double psi = -0.5 * c * kd.norm_half() * kd.norm_half();
    CHECK(eval_W(fs0, x, z) == doctest::Approx(psi).epsilon(1e-12));
  }
}

TEST_CASE("riccati_residual guards and mode table output") {
  const BasisConfig cfg(1.0, 3, 1.0, 1.0);
  const double mu = 0.5;
  const double tbar = concave_horizon(mu, 1.0, 1.0);
  const auto fs = make_fundamental_solution(mu, 10.0 * cbar(1.0, 1.0), 0.5 * tbar, cfg);
  CHECK_THROWS_AS(riccati_residual(fs, 1, 0.999 * tbar, 0.01 * tbar), std::domain_error);
  const auto fs_inf = make_fundamental_solution(0.0, kInf, 0.3, cfg);
  CHECK_THROWS_AS(riccati_residual(fs_inf, 1, 0.1, 1e-5), std::invalid_argument);

  std::ostringstream table;
  write_mode_table(fs_inf, table);
  const std::string text = table.str();
  CHECK(text.rfind("n,lambda,alpha,omega,p,q,r\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // header + 3 modes
}
