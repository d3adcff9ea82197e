#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kms/error.hpp"

namespace kms {

/// Dense univariate polynomial with complex coefficients in ascending order.
class Polynomial {
 public:
  Polynomial() : c_{0.0} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  /// The monomial-free constant polynomial.
  static Polynomial constant(Complex c) { return Polynomial({c}); }

  int degree() const { return int(c_.size()) - 1; }
  std::span<const Complex> coeffs() const { return c_; }
  Complex operator[](int k) const { return c_[k]; }
  Complex leading() const { return c_.back(); }

  Complex operator()(Complex z) const;
  /// p(z) and p'(z) in one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

  Polynomial derivative() const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;

  /// Synthetic division by (z - root); returns quotient and remainder.
  std::pair<Polynomial, Complex> divide_linear(Complex root) const;

  /// max_k |a_k|.
  double max_abs_coeff() const;

  /// Coefficientwise equality within rel_tol * max|a_k|.
  bool approx_equal(const Polynomial& other, double rel_tol = 1e-12) const;

 private:
  void trim();
  std::vector<Complex> c_;
};

/// Which factor of p_2n a zero belongs to.
/// Type1: zero of s_{n+1}, odd eigenvector. Type2: zero of c_{n+1}, even.
enum class ZeroType { Type1, Type2 };

const char* to_string(ZeroType t);

enum class SelfInversiveKind { Reciprocal, AntiReciprocal, General, NotSelfInversive };

struct SelfInversiveResult {
  SelfInversiveKind kind;
  Complex epsilon;  // meaningful unless NotSelfInversive
};

const char* to_string(SelfInversiveKind k);

/// U_k(t) by the three-term recurrence.
Complex chebyshev_u(int k, Complex t);
double chebyshev_u(int k, double t);

/// U_k as a coefficient polynomial in t.
Polynomial chebyshev_u_poly(int k);

/// psi_n(rho, lambda) = det(lambda I - K_n(rho)) as a polynomial in lambda.
Polynomial char_poly_recurrence(int n, Complex rho);

/// psi_n(rho, lambda) via the three-term recurrence, O(n).
Complex char_poly_eval_recurrence(int n, Complex rho, Complex lambda);

/// psi_n and d psi_n / d lambda via the differentiated recurrence.
std::pair<Complex, Complex> char_poly_eval_with_derivative(int n, Complex rho,
                                                           Complex lambda);

/// psi_n(rho, lambda) from the Chebyshev closed form, falling back to the
/// recurrence at rho in {0, +-1}, lambda = 0 or n < 2.
Complex char_poly_eval(int n, Complex rho, Complex lambda);

/// tau(rho, lambda) = (rho^2 (lambda + 1) + lambda - 1) / (2 lambda rho).
Complex tau_value(Complex rho, Complex lambda);

/// Monic degree-2n polynomial whose zeros come in inverse pairs and map
/// two-to-one onto the eigenvalues of K_n(rho).
Polynomial poly_p2n(int n, Complex rho);
/// z^{n+1} - rho z^n + rho z - 1.
Polynomial poly_s(int n, Complex rho);
/// z^{n+1} - rho z^n - rho z + 1.
Polynomial poly_c(int n, Complex rho);

SelfInversiveResult is_self_inversive(const Polynomial& p, double rel_tol = 1e-12);

/// lambda(rho, z) = z (1 - rho^2) / ((z - rho)(1 - rho z)).
/// Throws PoleError for z in {rho, 1/rho} and InvalidParameter for
/// rho in {-1, 0, 1} or z = 0.
Complex zero_to_eigenvalue(Complex rho, Complex z);

/// The inverse pair (z, 1/z) with |z| >= 1; on ties the member with
/// non-negative imaginary part comes first.
std::pair<Complex, Complex> eigenvalue_to_zeros(Complex rho, Complex lambda);

/// Residual comparison |s_{n+1}(z)| vs |c_{n+1}(z)|. Throws AmbiguityError
/// when neither vanishes to 1e-8 (1+|rho|)^(n+1).
ZeroType classify_zero(int n, Complex rho, Complex z);

/// Eigenvalue from a typed zero using the factor-specific closed forms; for
/// |z| >= 1 the (1 - rho z)^2 form is used, otherwise the (z - rho)^2 one.
Complex typed_zero_to_eigenvalue(int n, Complex rho, Complex z, ZeroType type);

/// Cohn's criterion as a predicate: self-inversive and every zero of p' in
/// the closed unit disc.
bool cohn_all_zeros_on_unit_circle(const Polynomial& p, double tol = 1e-8);

}  // namespace kms
