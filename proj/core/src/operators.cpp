#include "waveaction/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "waveaction/errors.hpp"

namespace waveaction {

namespace {

const char* kind_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::A: return "A";
    case OperatorKind::A_sqrt: return "A^1/2";
    case OperatorKind::J: return "J";
    case OperatorKind::I_mu: return "I_mu";
    case OperatorKind::I_mu_sqrt: return "I_mu^1/2";
    case OperatorKind::I_mu_inv_sqrt: return "I_mu^-1/2";
    case OperatorKind::M_mu: return "M_mu";
    case OperatorKind::K_mu: return "K_mu";
    case OperatorKind::Identity: return "I";
  }
  return "?";
}

}  // namespace

DiagonalOperator make_operator(OperatorKind kind, double mu, const BasisConfig& cfg) {
  if (mu < 0.0) throw std::invalid_argument("make_operator: mu must be >= 0");
  DiagonalOperator op;
  op.basis = cfg;
  op.name = kind_name(kind);
  op.eigvals.resize(static_cast<size_t>(cfg.truncation));
  for (int n = 1; n <= cfg.truncation; ++n) {
    const double lam = lambda_n(n, cfg);
    const double damp = 1.0 + mu * mu * lam;
    double f = 0.0;
    switch (kind) {
      case OperatorKind::A: f = lam; break;
      case OperatorKind::A_sqrt: f = std::sqrt(lam); break;
      case OperatorKind::J: f = 1.0 / std::sqrt(lam); break;
      case OperatorKind::I_mu: f = 1.0 / damp; break;
      case OperatorKind::I_mu_sqrt: f = 1.0 / std::sqrt(damp); break;
      case OperatorKind::I_mu_inv_sqrt: f = std::sqrt(damp); break;
      case OperatorKind::M_mu: f = std::sqrt(damp / lam); break;
      case OperatorKind::K_mu: f = std::pow(damp / lam, 0.25); break;
      case OperatorKind::Identity: f = 1.0; break;
    }
    op.eigvals[static_cast<size_t>(n - 1)] = f;
  }
  return op;
}

SpectralVector op_apply(const DiagonalOperator& F, const SpectralVector& x) {
  require_same_basis(F.basis, x.basis, "op_apply");
  SpectralVector out = x;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] *= F.eigvals[i];
  return out;
}

DiagonalOperator op_compose(const DiagonalOperator& F, const DiagonalOperator& G) {
  require_same_basis(F.basis, G.basis, "op_compose");
  DiagonalOperator out = F;
  out.name = F.name + "*" + G.name;
  for (size_t i = 0; i < out.eigvals.size(); ++i) out.eigvals[i] *= G.eigvals[i];
  return out;
}

DiagonalOperator op_invert(const DiagonalOperator& F) {
  double maxabs = 0.0;
  for (double f : F.eigvals) maxabs = std::max(maxabs, std::abs(f));
  const double tol = 1e-12 * maxabs;
  for (size_t i = 0; i < F.eigvals.size(); ++i) {
    if (std::abs(F.eigvals[i]) <= tol) {
      const int n = static_cast<int>(i) + 1;
      throw SingularOperatorError(
          n, "op_invert: operator " + F.name + " singular at mode " + std::to_string(n));
    }
  }
  DiagonalOperator out = F;
  out.name = "inv(" + F.name + ")";
  for (double& f : out.eigvals) f = 1.0 / f;
  return out;
}

}  // namespace waveaction
