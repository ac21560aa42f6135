#include "waveaction/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "waveaction/riccati.hpp"

namespace waveaction {

WaveState make_state(const SpectralVector& x0, const SpectralVector& v0, double mu) {
  require_same_basis(x0.basis, v0.basis, "make_state");
  if (mu < 0.0 || mu > 1.0) throw std::domain_error("make_state: mu must lie in [0, 1]");
  WaveState s;
  s.basis = x0.basis;
  s.mu = mu;
  s.time = 0.0;
  s.xi = x0.coeffs;
  s.pi.resize(x0.coeffs.size());
  for (int n = 1; n <= s.basis.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, mu, s.basis);
    s.pi[i] = s.basis.mass * v0.coeffs[i] / std::sqrt(mp.lambda_mu);
  }
  return s;
}

SpectralVector displacement_of(const WaveState& s) {
  return SpectralVector(s.basis, s.xi);
}

SpectralVector velocity_of(const WaveState& s) {
  SpectralVector v(s.basis);
  for (int n = 1; n <= s.basis.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, s.mu, s.basis);
    v.coeffs[i] = std::sqrt(mp.lambda_mu) * s.pi[i] / s.basis.mass;
  }
  return v;
}

WaveState semigroup_step(const WaveState& state, double dt) {
  if (dt < 0.0) throw std::domain_error("semigroup_step: dt must be >= 0");
  WaveState out = state;
  const double scale = std::sqrt(state.basis.mass * state.basis.stiffness);
  for (int n = 1; n <= state.basis.truncation; ++n) {
    const size_t i = static_cast<size_t>(n - 1);
    const ModeParams mp = mode_params(n, state.mu, state.basis);
    const double c = std::cos(mp.omega * dt);
    const double s = std::sin(mp.omega * dt);
    // Rotation in (sqrt(m kappa) xi, pi) coordinates.
    const double y1 = scale * state.xi[i];
    const double y2 = state.pi[i];
    out.xi[i] = (c * y1 + s * y2) / scale;
    out.pi[i] = -s * y1 + c * y2;
  }
  out.time = state.time + dt;
  return out;
}

std::vector<WaveState> propagate_profile(const SpectralVector& x0, const SpectralVector& v0,
                                         double t, double mu, int n_snapshots) {
  if (t < 0.0) throw std::domain_error("propagate_profile: t must be >= 0");
  if (n_snapshots < 1) throw std::invalid_argument("propagate_profile: need >= 1 snapshot");
  const WaveState start = make_state(x0, v0, mu);
  std::vector<WaveState> out;
  out.reserve(static_cast<size_t>(n_snapshots));
  if (n_snapshots == 1) {
    out.push_back(semigroup_step(start, t));
    return out;
  }
  for (int k = 0; k < n_snapshots; ++k) {
    const double s = t * static_cast<double>(k) / static_cast<double>(n_snapshots - 1);
    out.push_back(semigroup_step(start, s));
  }
  return out;
}

double state_energy(const WaveState& s) {
  double e = 0.0;
  for (size_t i = 0; i < s.xi.size(); ++i) {
    e += 0.5 * s.basis.stiffness * s.xi[i] * s.xi[i];
    e += 0.5 / s.basis.mass * s.pi[i] * s.pi[i];
  }
  return e;
}

double oplus_norm_sq(const WaveState& s) {
  double v = 0.0;
  for (size_t i = 0; i < s.xi.size(); ++i) {
    v += s.basis.mass * s.xi[i] * s.xi[i];
    v += s.pi[i] * s.pi[i] / s.basis.stiffness;
  }
  return v;
}

double oplus_gap(const WaveState& a, const WaveState& b) {
  require_same_basis(a.basis, b.basis, "oplus_gap");
  double v = 0.0;
  for (size_t i = 0; i < a.xi.size(); ++i) {
    const double dx = a.xi[i] - b.xi[i];
    const double dp = a.pi[i] - b.pi[i];
    v += a.basis.mass * dx * dx + dp * dp / a.basis.stiffness;
  }
  return std::sqrt(v);
}

std::vector<GapEntry> trotter_kato_gap(const WaveState& y0, double t,
                                       const std::vector<double>& mu_sequence) {
  for (size_t i = 0; i < mu_sequence.size(); ++i) {
    if (mu_sequence[i] < 0.0)
      throw std::invalid_argument("trotter_kato_gap: mu values must be >= 0");
    if (i > 0 && mu_sequence[i] > mu_sequence[i - 1])
      throw std::invalid_argument("trotter_kato_gap: mu sequence must be nonincreasing");
  }
  WaveState exact = y0;
  exact.mu = 0.0;
  const WaveState ref = semigroup_step(exact, t);

  std::vector<GapEntry> table;
  table.reserve(mu_sequence.size());
  for (double mu : mu_sequence) {
    WaveState perturbed = y0;
    perturbed.mu = mu;
    const WaveState evolved = semigroup_step(perturbed, t);
    table.push_back({mu, oplus_gap(evolved, ref)});
  }
  return table;
}

std::vector<double> fd_oracle(const std::vector<double>& x0_samples,
                              const std::vector<double>& v0_samples, double t, int n_space,
                              int n_time, const BasisConfig& cfg) {
  if (n_space < 2 || n_time < 1) throw std::invalid_argument("fd_oracle: grid too small");
  const size_t npts = static_cast<size_t>(n_space) + 1;
  if (x0_samples.size() != npts || v0_samples.size() != npts)
    throw std::invalid_argument("fd_oracle: samples must live on the n_space+1 point grid");
  const double dx = cfg.length / static_cast<double>(n_space);
  const double dt = t / static_cast<double>(n_time);
  const double c2 = cfg.stiffness / cfg.mass;
  if (dt > dx * std::sqrt(cfg.mass / cfg.stiffness) * (1.0 + 1e-12))
    throw std::domain_error("fd_oracle: CFL violation, need dt <= dx sqrt(m/kappa)");

  const double r = c2 * dt * dt / (dx * dx);
  std::vector<double> u_prev = x0_samples;
  std::vector<double> u_curr(npts, 0.0);
  std::vector<double> u_next(npts, 0.0);

  // Taylor start: u^1 = u^0 + dt v + (dt^2/2) c^2 u0_xx.
  for (size_t i = 1; i + 1 < npts; ++i) {
    const double lap = u_prev[i + 1] - 2.0 * u_prev[i] + u_prev[i - 1];
    u_curr[i] = u_prev[i] + dt * v0_samples[i] + 0.5 * r * lap;
  }
  u_curr.front() = 0.0;
  u_curr.back() = 0.0;
  if (n_time == 1) return u_curr;

  for (int step = 2; step <= n_time; ++step) {
    for (size_t i = 1; i + 1 < npts; ++i) {
      const double lap = u_curr[i + 1] - 2.0 * u_curr[i] + u_curr[i - 1];
      u_next[i] = 2.0 * u_curr[i] - u_prev[i] + r * lap;
    }
    u_next.front() = 0.0;
    u_next.back() = 0.0;
    std::swap(u_prev, u_curr);
    std::swap(u_curr, u_next);
  }
  return u_curr;
}

}  // namespace waveaction
