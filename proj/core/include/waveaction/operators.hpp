#pragma once

#include <string>
#include <vector>

#include "waveaction/basis.hpp"

namespace waveaction {

/// The Riesz-spectral operator family over the shared sine eigenbasis.
/// Eigenvalues at mode n:
///   A: lambda_n                 A_sqrt: lambda_n^{1/2}
///   J: lambda_n^{-1/2}          I_mu: (1 + mu^2 lambda_n)^{-1}
///   I_mu_sqrt: (1+mu^2 l)^{-1/2}   I_mu_inv_sqrt: (1+mu^2 l)^{1/2}
///   M_mu: ((1+mu^2 l)/l)^{1/2}  K_mu: M_mu^{1/2}      Identity: 1
enum class OperatorKind { A, A_sqrt, J, I_mu, I_mu_sqrt, I_mu_inv_sqrt, M_mu, K_mu, Identity };

/// Eigenvalue sequence over the shared basis; application is the
/// componentwise product (F x)_n = f_n a_n.
struct DiagonalOperator {
  BasisConfig basis;
  std::string name;
  std::vector<double> eigvals;

  double eig(int n) const { return eigvals[static_cast<size_t>(n - 1)]; }
};

DiagonalOperator make_operator(OperatorKind kind, double mu, const BasisConfig& cfg);

SpectralVector op_apply(const DiagonalOperator& F, const SpectralVector& x);

/// Composition eigenvalues multiply (shared eigenbasis, so order is immaterial).
DiagonalOperator op_compose(const DiagonalOperator& F, const DiagonalOperator& G);

/// Inverse eigenvalues reciprocate. An eigenvalue with
/// |f_n| < 1e-12 * max|f| is singular and names the offending mode.
DiagonalOperator op_invert(const DiagonalOperator& F);

}  // namespace waveaction
