#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kms/error.hpp"

namespace kms {

/// Identifies one member K_n(rho) = [rho^|j-k|] of the family.
struct KmsParams {
  KmsParams(int n, Complex rho);
  KmsParams(int n, double rho) : KmsParams(n, Complex(rho, 0.0)) {}

  int n;
  Complex rho;

  /// (n+1)/(n-1); the parameter value at which the second outlying
  /// eigenvalue appears.
  double xi() const { return double(n + 1) / double(n - 1); }
  bool is_real() const { return rho.imag() == 0.0; }
};

/// Row-major dense complex matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n);
  DenseMatrix(int n, std::vector<Complex> entries);

  static DenseMatrix identity(int n);

  int size() const { return n_; }
  Complex& operator()(int j, int k) { return a_[std::size_t(j) * n_ + k]; }
  const Complex& operator()(int j, int k) const {
    return a_[std::size_t(j) * n_ + k];
  }
  std::span<const Complex> entries() const { return a_; }

  DenseMatrix operator*(const DenseMatrix& rhs) const;
  std::vector<Complex> apply(std::span<const Complex> x) const;
  DenseMatrix conj() const;

  /// Maximum absolute row sum.
  double inf_norm() const;
  /// Largest |a_jk - b_jk|.
  double max_abs_diff(const DenseMatrix& other) const;
  bool is_real() const;

 private:
  int n_ = 0;
  std::vector<Complex> a_;
};

/// Symmetric tridiagonal storage: diag has n entries, off has n-1.
struct Tridiagonal {
  std::vector<Complex> diag;
  std::vector<Complex> off;

  DenseMatrix dense() const;
};

/// Endpoints of the range of the (continued) symbol for real rho.
/// For rho = +-1 the range degenerates and `degenerate` is set; callers treat
/// every eigenvalue as inside it.
struct SymbolRange {
  double lo;
  double hi;
  bool degenerate;

  bool contains(double lambda, double rel_tol = 1e-10) const;
};

/// Eigenvalue with its eigenvector, as consumed by the symmetry transforms.
struct BasicEigenPair {
  Complex lambda;
  std::vector<Complex> vector;
};

/// Builds K_n(rho). Throws OverflowError when |rho|^(n-1) is not
/// representable.
DenseMatrix build_kms(const KmsParams& p);

/// Closed-form tridiagonal inverse. Throws SingularParameter for rho = +-1.
Tridiagonal kms_inverse_tridiagonal(const KmsParams& p);
DenseMatrix kms_inverse(const KmsParams& p);

/// (1 - rho^2)^(n-1), evaluated by repeated squaring.
Complex kms_determinant(const KmsParams& p);

/// y = K_n(rho) x in O(n) using two first-order recurrences.
std::vector<Complex> kms_multiply(const KmsParams& p,
                                  std::span<const Complex> x);
std::vector<double> kms_multiply(int n, double rho, std::span<const double> x);

/// Max-row-sum norm of K_n(rho) without forming it.
double kms_inf_norm(const KmsParams& p);

/// (1 - rho^2) / (1 - 2 rho cos(theta) + rho^2), the Poisson kernel and its
/// continuation to |rho| >= 1. Throws PoleError where the denominator
/// vanishes.
Complex symbol_sigma(Complex rho, double theta);

SymbolRange symbol_range(double rho);

/// (lambda, J_n y): an eigenpair of K_n(-rho) from one of K_n(rho).
BasicEigenPair transform_negate(const BasicEigenPair& pair);
/// (conj(lambda), conj(y)): an eigenpair of K_n(conj(rho)).
BasicEigenPair transform_conjugate(const BasicEigenPair& pair);

/// Applies the signature matrix diag(1, -1, 1, ...) in place.
template <class T>
void apply_signature(std::span<T> y) {
  for (std::size_t j = 1; j < y.size(); j += 2) y[j] = -y[j];
}

/// ||K y - lambda y||_inf using the O(n) product.
double eigen_residual(const KmsParams& p, Complex lambda,
                      std::span<const Complex> y);
double eigen_residual(int n, double rho, double lambda,
                      std::span<const double> y);

/// x^e for a non-negative integer exponent by repeated squaring.
Complex ipow(Complex x, int e);
double ipow(double x, int e);

}  // namespace kms
