#include "kms/matrix.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

namespace kms {

KmsParams::KmsParams(int n_, Complex rho_) : n(n_), rho(rho_) {
  if (n < 2) throw InvalidParameter("matrix dimension must be >= 2, got " + std::to_string(n));
  if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag()))
    throw InvalidParameter("rho must be finite");
}

DenseMatrix::DenseMatrix(int n) : n_(n), a_(std::size_t(n) * n) {}

DenseMatrix::DenseMatrix(int n, std::vector<Complex> entries)
    : n_(n), a_(std::move(entries)) {
  if (a_.size() != std::size_t(n) * n)
    throw InvalidParameter("entry count does not match n*n");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int j = 0; j < n; ++j) m(j, j) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.n_ != n_) throw InvalidParameter("dimension mismatch in product");
  DenseMatrix out(n_);
  for (int j = 0; j < n_; ++j)
    for (int l = 0; l < n_; ++l) {
      const Complex a = (*this)(j, l);
      if (a == 0.0) continue;
      for (int k = 0; k < n_; ++k) out(j, k) += a * rhs(l, k);
    }
  return out;
}

std::vector<Complex> DenseMatrix::apply(std::span<const Complex> x) const {
  if (int(x.size()) != n_) throw InvalidParameter("dimension mismatch in apply");
  std::vector<Complex> y(n_);
  for (int j = 0; j < n_; ++j) {
    Complex s = 0.0;
    for (int k = 0; k < n_; ++k) s += (*this)(j, k) * x[k];
    y[j] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::conj() const {
  DenseMatrix out(n_);
  std::transform(a_.begin(), a_.end(), out.a_.begin(),
                 [](Complex z) { return std::conj(z); });
  return out;
}

double DenseMatrix::inf_norm() const {
  double best = 0.0;
  for (int j = 0; j < n_; ++j) {
    double row = 0.0;
    for (int k = 0; k < n_; ++k) row += std::abs((*this)(j, k));
    best = std::max(best, row);
  }
  return best;
}

double DenseMatrix::max_abs_diff(const DenseMatrix& other) const {
  if (other.n_ != n_) throw InvalidParameter("dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    d = std::max(d, std::abs(a_[i] - other.a_[i]));
  return d;
}

bool DenseMatrix::is_real() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](Complex z) { return z.imag() == 0.0; });
}

DenseMatrix Tridiagonal::dense() const {
  const int n = int(diag.size());
  DenseMatrix m(n);
  for (int j = 0; j < n; ++j) m(j, j) = diag[j];
  for (int j = 0; j + 1 < n; ++j) m(j, j + 1) = m(j + 1, j) = off[j];
  return m;
}

bool SymbolRange::contains(double lambda, double rel_tol) const {
  if (degenerate) return true;
  const double slack = rel_tol * std::max({1.0, std::abs(lo), std::abs(hi)});
  return lambda >= lo - slack && lambda <= hi + slack;
}

Complex ipow(Complex x, int e) {
  Complex r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

double ipow(double x, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

DenseMatrix build_kms(const KmsParams& p) {
  const int n = p.n;
  const double mag = std::abs(p.rho);
  if (mag > 1.0 && double(n - 1) * std::log(mag) > std::log(DBL_MAX))
    throw OverflowError("|rho|^(n-1) exceeds double range");

  std::vector<Complex> powers(n);
  powers[0] = 1.0;
  for (int d = 1; d < n; ++d) powers[d] = powers[d - 1] * p.rho;

  DenseMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = powers[std::abs(j - k)];
  return m;
}

Tridiagonal kms_inverse_tridiagonal(const KmsParams& p) {
  const Complex rho = p.rho;
  const Complex det = 1.0 - rho * rho;
  if (det == 0.0)
    throw SingularParameter("K_n(rho) is singular for rho = +-1");
  const Complex scale = 1.0 / det;

  Tridiagonal t;
  t.diag.assign(p.n, (1.0 + rho * rho) * scale);
  t.diag.front() = t.diag.back() = scale;
  t.off.assign(p.n - 1, -rho * scale);
  return t;
}

DenseMatrix kms_inverse(const KmsParams& p) {
  return kms_inverse_tridiagonal(p).dense();
}

Complex kms_determinant(const KmsParams& p) {
  return ipow(1.0 - p.rho * p.rho, p.n - 1);
}

namespace {

// (K x)_j = sum_{k<=j} rho^(j-k) x_k + sum_{k>=j} rho^(k-j) x_k - x_j.
template <class T>
std::vector<T> toeplitz_exp_apply(T rho, std::span<const T> x) {
  const std::size_t n = x.size();
  std::vector<T> y(n);
  T acc{};
  for (std::size_t j = 0; j < n; ++j) {
    acc = x[j] + rho * acc;
    y[j] = acc;
  }
  acc = T{};
  for (std::size_t j = n; j-- > 0;) {
    acc = x[j] + rho * acc;
    y[j] += acc - x[j];
  }
  return y;
}

}  // namespace

std::vector<Complex> kms_multiply(const KmsParams& p,
                                  std::span<const Complex> x) {
  if (int(x.size()) != p.n) throw InvalidParameter("vector length must equal n");
  return toeplitz_exp_apply<Complex>(p.rho, x);
}

std::vector<double> kms_multiply(int n, double rho, std::span<const double> x) {
  if (int(x.size()) != n) throw InvalidParameter("vector length must equal n");
  return toeplitz_exp_apply<double>(rho, x);
}

double kms_inf_norm(const KmsParams& p) {
  // Row sums of |rho|^|j-k| peak at the middle row.
  const double r = std::abs(p.rho);
  const int mid = (p.n - 1) / 2;
  double s = 1.0, term = 1.0;
  for (int d = 1; d < p.n; ++d) {
    term *= r;
    if (d <= mid) s += term;
    if (d <= p.n - 1 - mid) s += term;
  }
  // For |rho| > 1 the corner rows dominate instead.
  double corner = 1.0;
  term = 1.0;
  for (int d = 1; d < p.n; ++d) {
    term *= r;
    corner += term;
  }
  return std::max(s, corner);
}

Complex symbol_sigma(Complex rho, double theta) {
  const Complex den = 1.0 - 2.0 * rho * std::cos(theta) + rho * rho;
  if (std::abs(den) <= 1e-14 * (1.0 + std::norm(rho)))
    throw PoleError("symbol denominator vanishes");
  return (1.0 - rho * rho) / den;
}

SymbolRange symbol_range(double rho) {
  if (rho == 1.0 || rho == -1.0)
    return {-HUGE_VAL, HUGE_VAL, true};
  const double a = (1.0 - rho) / (1.0 + rho);
  const double b = (1.0 + rho) / (1.0 - rho);
  return {std::min(a, b), std::max(a, b), false};
}

BasicEigenPair transform_negate(const BasicEigenPair& pair) {
  BasicEigenPair out = pair;
  apply_signature(std::span<Complex>(out.vector));
  return out;
}

BasicEigenPair transform_conjugate(const BasicEigenPair& pair) {
  BasicEigenPair out;
  out.lambda = std::conj(pair.lambda);
  out.vector.reserve(pair.vector.size());
  for (Complex v : pair.vector) out.vector.push_back(std::conj(v));
  return out;
}

double eigen_residual(const KmsParams& p, Complex lambda,
                      std::span<const Complex> y) {
  const auto ky = kms_multiply(p, y);
  double r = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j)
    r = std::max(r, std::abs(ky[j] - lambda * y[j]));
  return r;
}

double eigen_residual(int n, double rho, double lambda,
                      std::span<const double> y) {
  const auto ky = kms_multiply(n, rho, y);
  double r = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j)
    r = std::max(r, std::abs(ky[j] - lambda * y[j]));
  return r;
}

}  // namespace kms
