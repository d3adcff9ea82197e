#pragma once

#include <vector>

#include "kms/matrix.hpp"

namespace kms {

/// Approximate values next to reference values.
struct ApproxReport {
  std::vector<double> approx_values;
  std::vector<double> exact_values;
  /// max |approx - exact| / |exact|, absolute where |exact| < 1e-12.
  double max_rel_error = 0.0;
};

ApproxReport make_report(std::vector<double> approx, std::vector<double> exact);

/// Large-n forms of the two outlying eigenpairs for |rho| > 1:
/// lambda_{0,1} ~ +-rho^{n+1} / (rho^2 - 1) with
/// y_j = rho^{(n-1)/2-j} +- rho^{j-(n-1)/2}, normalized to max |y_j| = 1.
struct LargeEigs {
  Complex lambda0;
  Complex lambda1;
  std::vector<Complex> y0;
  std::vector<Complex> y1;
};

/// Throws InvalidParameter for |rho| <= 1 and OverflowError when
/// |rho|^{n+1} is not representable.
LargeEigs large_eigs(int n, Complex rho);

/// Interpolated root between the bracket ends: beta_k rho + gamma_k (1 - rho)
/// for 0 <= rho <= 1, (beta_k - alpha_k)/rho + alpha_k for rho >= 1, k >= 2.
/// Throws DomainError for rho > 1 with k in {0, 1}.
double regula_falsi_mu(int n, double rho, int k);

/// (1 - rho^2) / (1 - 2 rho cos mu + rho^2) in a cancellation-free form.
double lambda_from_trig_mu(double rho, double mu);

/// lambda_k ~ (1 - rho)/(1 - cos(k pi/n)) for k >= 1 and
/// lambda_0 ~ n + (n^2 - 1)(rho - 1)/3.
std::vector<double> near_one_eigs(int n, double rho);

/// Magnitudes of large_eigs against the two largest |lambda| of the exact
/// spectrum; entry 0 is lambda_0, entry 1 is lambda_1.
ApproxReport large_eigs_report(int n, Complex rho);

/// Regula falsi eigenvalues against the structured solver, over every k the
/// approximation is defined for.
ApproxReport regula_falsi_report(int n, double rho);

/// near_one_eigs against the structured solver, indexed by k.
ApproxReport near_one_report(int n, double rho);

}  // namespace kms
