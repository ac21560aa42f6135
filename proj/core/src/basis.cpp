#include "waveaction/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace waveaction {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;
};

// Nodes/weights by Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int npts) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(npts));
  rule.weights.resize(static_cast<size_t>(npts));
  const int half = (npts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(npts) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= npts; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(npts) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i)] = -x;
    rule.nodes[static_cast<size_t>(npts - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(npts - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

BasisConfig::BasisConfig(double L, int N, double m, double kappa)
    : length(L), truncation(N), mass(m), stiffness(kappa) {
  if (!(L > 0.0)) throw std::invalid_argument("BasisConfig: length must be > 0");
  if (N < 1) throw std::invalid_argument("BasisConfig: truncation must be >= 1");
  if (!(m > 0.0)) throw std::invalid_argument("BasisConfig: mass must be > 0");
  if (!(kappa > 0.0)) throw std::invalid_argument("BasisConfig: stiffness must be > 0");
}

double lambda_n(int n, const BasisConfig& cfg) {
  if (n < 1) throw std::invalid_argument("lambda_n: mode index must be >= 1");
  const double k = static_cast<double>(n) * kPi / cfg.length;
  return k * k;
}

double basis_fn_value(int n, double pos, BasisKind which, const BasisConfig& cfg) {
  if (n < 1) throw std::invalid_argument("basis_fn_value: mode index must be >= 1");
  if (pos < 0.0 || pos > cfg.length)
    throw std::domain_error("basis_fn_value: position outside [0, L]");
  const double L = cfg.length;
  const double s = std::sin(static_cast<double>(n) * kPi * pos / L);
  if (which == BasisKind::L2) return std::sqrt(2.0 / L) * s;
  return std::sqrt(2.0 * L) / (static_cast<double>(n) * kPi) * s;
}

SpectralVector::SpectralVector(const BasisConfig& cfg, std::vector<double> a)
    : basis(cfg), coeffs(std::move(a)) {
  if (static_cast<int>(coeffs.size()) != cfg.truncation)
    throw std::invalid_argument("SpectralVector: coefficient count must equal N");
}

double SpectralVector::norm_half() const {
  double s = 0.0;
  for (double a : coeffs) s += a * a;
  return std::sqrt(s);
}

double SpectralVector::tail_indicator() const {
  double maxabs = 0.0;
  for (double a : coeffs) maxabs = std::max(maxabs, std::abs(a));
  if (maxabs == 0.0) return 0.0;
  return std::abs(coeffs.back()) / maxabs;
}

void require_same_basis(const BasisConfig& a, const BasisConfig& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": basis mismatch");
}

SpectralVector operator+(const SpectralVector& a, const SpectralVector& b) {
  require_same_basis(a.basis, b.basis, "operator+");
  SpectralVector out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

SpectralVector operator-(const SpectralVector& a, const SpectralVector& b) {
  require_same_basis(a.basis, b.basis, "operator-");
  SpectralVector out = a;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

SpectralVector operator*(double s, const SpectralVector& a) {
  SpectralVector out = a;
  for (double& c : out.coeffs) c *= s;
  return out;
}

SpectralVector project_profile(const std::vector<double>& positions,
                               const std::vector<double>& values, const BasisConfig& cfg) {
  if (positions.size() != values.size() || positions.size() < 2)
    throw std::invalid_argument("project_profile: need matching (position, value) pairs");
  const double L = cfg.length;
  const double postol = 1e-9 * L;
  if (std::abs(positions.front()) > postol || std::abs(positions.back() - L) > postol)
    throw std::invalid_argument("project_profile: samples must cover [0, L]");
  for (size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i] > positions[i - 1]))
      throw std::invalid_argument("project_profile: positions must be strictly increasing");
  }
  double maxabs = 0.0;
  for (double v : values) maxabs = std::max(maxabs, std::abs(v));
  const double endtol = 1e-12 * (1.0 + maxabs);
  if (std::abs(values.front()) > endtol || std::abs(values.back()) > endtol)
    throw std::invalid_argument(
        "project_profile: endpoint values must vanish (Dirichlet boundary data)");

  SpectralVector out(cfg);
  for (int n = 1; n <= cfg.truncation; ++n) {
    double integral = 0.0;
    double f_prev = values[0] * basis_fn_value(n, positions[0], BasisKind::L2, cfg);
    for (size_t i = 1; i < positions.size(); ++i) {
      const double f = values[i] * basis_fn_value(n, positions[i], BasisKind::L2, cfg);
      integral += 0.5 * (f + f_prev) * (positions[i] - positions[i - 1]);
      f_prev = f;
    }
    out.coeffs[static_cast<size_t>(n - 1)] = std::sqrt(lambda_n(n, cfg)) * integral;
  }
  return out;
}

std::vector<double> reconstruct(const SpectralVector& x, const std::vector<double>& positions) {
  std::vector<double> out(positions.size(), 0.0);
  const BasisConfig& cfg = x.basis;
  for (size_t i = 0; i < positions.size(); ++i) {
    double u = 0.0;
    for (int n = 1; n <= cfg.truncation; ++n) {
      const double a = x.coeffs[static_cast<size_t>(n - 1)];
      if (a == 0.0) continue;
      u += a * basis_fn_value(n, positions[i], BasisKind::Half, cfg);
    }
    out[i] = u;
  }
  return out;
}

namespace {

int parse_mode_key(const std::string& key) {
  if (key == "single-mode") return 1;
  if (key.rfind("mode:", 0) == 0) {
    try {
      size_t used = 0;
      int k = std::stoi(key.substr(5), &used);
      if (used == key.size() - 5 && k >= 1) return k;
    } catch (const std::exception&) {
    }
  }
  return 0;
}

}  // namespace

bool is_named_profile(const std::string& key) {
  return key == "zero" || key == "triangle" || key == "raised-cosine" || parse_mode_key(key) > 0;
}

double named_profile_value(const std::string& key, double pos, const BasisConfig& cfg) {
  const double L = cfg.length;
  if (key == "zero") return 0.0;
  if (key == "triangle") return 1.0 - std::abs(2.0 * pos / L - 1.0);
  if (key == "raised-cosine") {
    // Bump centered at L/2, support width L/4.
    const double width = L / 4.0;
    const double d = pos - 0.5 * L;
    if (std::abs(d) >= 0.5 * width) return 0.0;
    return 0.5 * (1.0 + std::cos(2.0 * kPi * d / width));
  }
  if (int k = parse_mode_key(key); k > 0) return basis_fn_value(k, pos, BasisKind::Half, cfg);
  throw std::invalid_argument("named_profile_value: unknown profile '" + key + "'");
}

SpectralVector project_named_profile(const std::string& key, const BasisConfig& cfg) {
  if (!is_named_profile(key))
    throw std::invalid_argument("project_named_profile: unknown profile '" + key + "'");
  if (key == "zero") return SpectralVector(cfg);
  if (int k = parse_mode_key(key); k > 0) {
    // A mode above the truncation order is orthogonal to the represented
    // space; its projection is exactly zero.
    SpectralVector out(cfg);
    if (k <= cfg.truncation) out.coeffs[static_cast<size_t>(k - 1)] = 1.0;
    return out;
  }

  // One panel per half wavelength of mode N, 32 Gauss-Legendre nodes each.
  const int panels = cfg.truncation;
  static const GaussRule rule = gauss_legendre(32);
  const double L = cfg.length;
  const double hpanel = L / static_cast<double>(panels);

  SpectralVector out(cfg);
  for (int n = 1; n <= cfg.truncation; ++n) {
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = hpanel * static_cast<double>(p);
      const double mid = a + 0.5 * hpanel;
      double acc = 0.0;
      for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const double pos = mid + 0.5 * hpanel * rule.nodes[j];
        acc += rule.weights[j] * named_profile_value(key, pos, cfg) *
               basis_fn_value(n, pos, BasisKind::L2, cfg);
      }
      integral += 0.5 * hpanel * acc;
    }
    out.coeffs[static_cast<size_t>(n - 1)] = std::sqrt(lambda_n(n, cfg)) * integral;
  }
  return out;
}

SpectralVector project_bandlimited_profile(const std::string& key, const BasisConfig& cfg,
                                           int max_modes) {
  if (max_modes < 1)
    throw std::invalid_argument("project_bandlimited_profile: max_modes must be >= 1");
  const int kept = std::min(max_modes, cfg.truncation);
  const BasisConfig low(cfg.length, kept, cfg.mass, cfg.stiffness);
  const SpectralVector coarse = project_named_profile(key, low);
  SpectralVector out(cfg);
  std::copy(coarse.coeffs.begin(), coarse.coeffs.end(), out.coeffs.begin());
  return out;
}

}  // namespace waveaction
