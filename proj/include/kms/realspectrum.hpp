#pragma once

#include <string>
#include <vector>

#include "kms/chebpoly.hpp"
#include "kms/matrix.hpp"

namespace kms {

/// alpha_k = (k-1) pi/(n-1) for k = 1..n-1 (alpha[0] is unused and set to
/// -pi/(n-1)), beta_k = k pi/n and gamma_k = (k+1) pi/(n+1) for k = 0..n-1.
struct GridPoints {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> gamma;

  static GridPoints make(int n);
};

enum class RootKind { Trigonometric, Hyperbolic };
enum class EigenClass { Ordinary, Extraordinary };

const char* to_string(RootKind k);
const char* to_string(EigenClass c);

/// A root of one of the secular equations. For Hyperbolic roots `value` is x
/// with mu = i x.
struct MuRoot {
  int k = 0;
  RootKind kind = RootKind::Trigonometric;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  /// |f(value) - rho| with f the ratio function of the bracket.
  double residual = 0.0;
};

struct EigenPair {
  int k = 0;
  /// +-inf when |lambda| exceeds the double range; see log_abs_lambda.
  double lambda = 0.0;
  double log_abs_lambda = 0.0;
  MuRoot mu;
  std::vector<double> vector;  // empty unless requested
  ZeroType zero_type = ZeroType::Type2;
  EigenClass klass = EigenClass::Ordinary;
};

struct SpectrumDiagnostics {
  double max_residual = 0.0;      // ||K y - lambda y||_inf / (||K||_inf ||y||_inf); 0 without vectors
  double trace_error = 0.0;       // |sum lambda - n| / max(n, sum |lambda|)
  double determinant_error = 0.0; // relative, evaluated in log space
  double max_cross_check = 0.0;   // worst |l14 - l15| / allowance seen (<= 1)
  int extraordinary_count = 0;
  bool overflow = false;          // some lambda is returned as +-inf
  std::vector<std::string> notes;
};

struct SpectrumResult {
  KmsParams params;
  std::vector<EigenPair> pairs;  // sorted by k
  SpectrumDiagnostics diagnostics;
};

struct SpectrumOptions {
  bool vectors = true;
  bool parallel = true;
  /// Relative bracket width at which bisection hands over to the secant step.
  double tol = 1e-13;
};

/// Ratio functions cos(mu(n+1)/2)/cos(mu(n-1)/2), sin(...)/sin(...) and
/// their hyperbolic counterparts. Throw PoleError when the denominator is
/// within 1e-14 of zero; trig_s and hyp_s return their limit xi_n at 0.
double trig_c(int n, double mu);
double trig_s(int n, double mu);
double hyp_c(int n, double x);
double hyp_s(int n, double x);

/// The unique root of the k-th secular equation for rho >= 0.
MuRoot solve_mu(int n, double rho, int k, double tol = 1e-13);

/// Eigenvalue from a root. Evaluates both closed forms and throws
/// ConsistencyError if they disagree beyond their rounding allowance.
double lambda_from_mu(int n, double rho, const MuRoot& root);

/// Eigenvector shape for a root, normalized to max |y_j| = 1 with the first
/// nonzero entry positive.
std::vector<double> eigenvector_from_mu(int n, const MuRoot& root);

/// All n eigenpairs for real rho of either sign. The parallel and serial
/// entry points return bitwise identical results.
SpectrumResult real_spectrum(const KmsParams& p, const SpectrumOptions& opt = {});
SpectrumResult real_spectrum_serial(const KmsParams& p, SpectrumOptions opt = {});

/// Range test against the symbol range, with relative slack 1e-10.
EigenClass classify_eigenvalue(int n, double rho, double lambda);

}  // namespace kms
