#pragma once

#include <string>
#include <vector>

namespace waveaction {

/// Dirichlet sine basis on [0, L] truncated at order N, together with the
/// physical constants (distributed mass m, elastic constant kappa) that fix
/// every derived spectral quantity.
struct BasisConfig {
  double length = 1.0;     // L > 0
  int truncation = 1;      // N >= 1
  double mass = 1.0;       // m > 0, kg/m
  double stiffness = 1.0;  // kappa > 0, N

  BasisConfig() = default;
  BasisConfig(double L, int N, double m, double kappa);

  bool operator==(const BasisConfig&) const = default;
};

/// lambda_n = (n pi / L)^2, the n-th eigenvalue of -d^2/dx^2 on (0, L).
double lambda_n(int n, const BasisConfig& cfg);

/// L2 basis phi_n = sqrt(2/L) sin(n pi x / L) or the X_{1/2}-orthonormal
/// half basis phi~_n = phi_n / sqrt(lambda_n).
enum class BasisKind { L2, Half };

double basis_fn_value(int n, double pos, BasisKind which, const BasisConfig& cfg);

/// Truncated coefficient sequence a_n = <x, phi~_n>_{1/2}; the universal
/// state representation. ||x||_{1/2}^2 = sum a_n^2 (Parseval).
struct SpectralVector {
  BasisConfig basis;
  std::vector<double> coeffs;

  SpectralVector() = default;
  explicit SpectralVector(const BasisConfig& cfg)
      : basis(cfg), coeffs(static_cast<size_t>(cfg.truncation), 0.0) {}
  SpectralVector(const BasisConfig& cfg, std::vector<double> a);

  int size() const { return static_cast<int>(coeffs.size()); }
  double norm_half() const;
  /// |a_N| / max_n |a_n|; 0 for the zero vector. Reported so truncation
  /// adequacy is observable.
  double tail_indicator() const;
};

SpectralVector operator+(const SpectralVector& a, const SpectralVector& b);
SpectralVector operator-(const SpectralVector& a, const SpectralVector& b);
SpectralVector operator*(double s, const SpectralVector& a);

void require_same_basis(const BasisConfig& a, const BasisConfig& b, const char* where);

/// Project sampled data onto the first N half-basis coefficients:
/// a_n = sqrt(lambda_n) * integral x(l) phi_n(l) dl, composite trapezoid
/// on the user grid. Positions must ascend from 0 to L and the endpoint
/// values must vanish (Dirichlet data).
SpectralVector project_profile(const std::vector<double>& positions,
                               const std::vector<double>& values,
                               const BasisConfig& cfg);

/// u(l) = sum_n a_n phi~_n(l) at the given positions.
std::vector<double> reconstruct(const SpectralVector& x, const std::vector<double>& positions);

/// Named analytic profiles: "zero", "single-mode", "mode:<k>", "triangle",
/// "raised-cosine" (bump centered at L/2, support width L/4).
bool is_named_profile(const std::string& key);
double named_profile_value(const std::string& key, double pos, const BasisConfig& cfg);

/// Projection of a named profile via composite Gauss-Legendre with one panel
/// per half wavelength of mode N (64 nodes per wavelength).
SpectralVector project_named_profile(const std::string& key, const BasisConfig& cfg);

/// Band-limited variant: project onto the first min(max_modes, N) modes and
/// zero the rest, so the result has exactly zero spectral tail beyond
/// max_modes. Used for targets that must be representable at the working
/// truncation order.
SpectralVector project_bandlimited_profile(const std::string& key, const BasisConfig& cfg,
                                           int max_modes);

}  // namespace waveaction
