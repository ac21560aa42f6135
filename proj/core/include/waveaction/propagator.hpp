#pragma once

#include <vector>

#include "waveaction/basis.hpp"

namespace waveaction {

/// Paired displacement / scaled-costate state of the first-order Cauchy
/// system. xi holds X_{1/2} coefficients of the displacement; pi holds the
/// L2-basis coefficients of the costate pi = m I_mu^{-1/2} w. Conversion to
/// physical velocity happens only at the module boundary.
struct WaveState {
  BasisConfig basis;
  double mu = 0.0;
  double time = 0.0;
  std::vector<double> xi;
  std::vector<double> pi;
};

/// Build a state from displacement and physical velocity coefficients:
/// pi_n = m v_n / sqrt(lambda_n^mu).
WaveState make_state(const SpectralVector& x0, const SpectralVector& v0, double mu);

SpectralVector displacement_of(const WaveState& s);
/// w_n = sqrt(lambda_n^mu) pi_n / m.
SpectralVector velocity_of(const WaveState& s);

/// Exact modal semigroup: each mode advances by the 2x2 rotation of a
/// harmonic oscillator at frequency omega_n^mu. Composition over steps
/// equals a single step over the sum.
WaveState semigroup_step(const WaveState& state, double dt);

/// Snapshots at n_snapshots uniform times spanning [0, t], each reached by a
/// single exact rotation from the initial state.
std::vector<WaveState> propagate_profile(const SpectralVector& x0, const SpectralVector& v0,
                                         double t, double mu, int n_snapshots);

/// E = (kappa/2) sum xi_n^2 + (1/(2m)) sum pi_n^2; conserved exactly by the
/// modal flow for every mu.
double state_energy(const WaveState& s);

/// ||(xi,pi)||_oplus^2 = m ||xi||_{1/2}^2 + (1/kappa) ||pi||_{L2}^2.
double oplus_norm_sq(const WaveState& s);
/// oplus-norm of the difference of two states on the same basis.
double oplus_gap(const WaveState& a, const WaveState& b);

struct GapEntry {
  double mu = 0.0;
  double gap = 0.0;
};

/// ||T_mu(t) y0 - T(t) y0||_oplus for each mu in the sequence (nonnegative,
/// nonincreasing); the mu = 0 entry is exactly zero.
std::vector<GapEntry> trotter_kato_gap(const WaveState& y0, double t,
                                       const std::vector<double>& mu_sequence);

/// Independent leapfrog oracle for the exact (mu = 0) wave equation with
/// Dirichlet ends. Samples live on the n_space+1 point uniform grid
/// including endpoints; dt = t/n_time must satisfy dt <= dx sqrt(m/kappa).
/// Returns the terminal displacement samples. Test-oracle use only.
std::vector<double> fd_oracle(const std::vector<double>& x0_samples,
                              const std::vector<double>& v0_samples, double t, int n_space,
                              int n_time, const BasisConfig& cfg);

}  // namespace waveaction
