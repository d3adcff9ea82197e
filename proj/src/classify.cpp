#include "kms/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kms/oracle.hpp"

namespace kms {
namespace {

constexpr double kTol = 1e-10;

bool entries_real(const DenseMatrix& a) { return a.is_real(); }

bool is_hermitian(const DenseMatrix& a) {
  const int n = a.size();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (a(j, k) != std::conj(a(k, j))) return false;
  return true;
}

double max_abs_entry(const DenseMatrix& a) {
  double m = 0.0;
  for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

// Absolute summability of the Laurent coefficients rho^|k|: compare the
// partial sums at two lengths.
bool symbol_summable(Complex rho) {
  const double r = std::abs(rho);
  double s1 = 0.0, s2 = 0.0, term = 1.0;
  for (int k = 0; k <= 8192; ++k) {
    if (k <= 4096) s1 += term;
    s2 += term;
    term *= r;
    if (!std::isfinite(s2)) return false;
  }
  return s2 - s1 <= 1e-6 * s1;
}

bool is_greens(const DenseMatrix& a) {
  if (!entries_real(a)) return false;
  const int n = a.size();
  if (a(0, 0) == 0.0) return false;
  // alpha_0 = 1 fixes the scaling; then beta and alpha are forced.
  std::vector<double> alpha(n), beta(n);
  for (int k = 0; k < n; ++k) beta[k] = a(0, k).real();
  for (int j = 0; j < n; ++j) {
    if (beta[j] == 0.0) return false;
    alpha[j] = a(j, j).real() / beta[j];
  }
  const double scale = std::max(1.0, max_abs_entry(a));
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k)
      if (std::abs(a(j, k).real() - alpha[j] * beta[k]) > kTol * scale ||
          std::abs(a(k, j).real() - alpha[j] * beta[k]) > kTol * scale)
        return false;
  return true;
}

bool is_totally_positive(const DenseMatrix& a) {
  if (!entries_real(a)) return false;
  const double m = std::max(1.0, max_abs_entry(a));
  for (int order = 1; order <= a.size(); ++order)
    if (oracle_minors(a, order) < -kTol * std::pow(m, order)) return false;
  return true;
}

double min_real_eigenvalue(const DenseMatrix& a) {
  const OracleSpectrum s = oracle_eig(a);
  double m = HUGE_VAL;
  for (const Complex& z : s.eigenvalues) m = std::min(m, z.real());
  return m;
}

}  // namespace

const char* to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::Positive: return "positive";
    case MatrixClass::RealSymmetric: return "real_symmetric";
    case MatrixClass::Hermitian: return "hermitian";
    case MatrixClass::BoundedSymbol: return "bounded_symbol";
    case MatrixClass::PositiveDefinite: return "positive_definite";
    case MatrixClass::PositiveSemidefinite: return "positive_semidefinite";
    case MatrixClass::Normal: return "normal";
    case MatrixClass::Greens: return "greens";
    case MatrixClass::TotallyPositive: return "totally_positive";
    case MatrixClass::Oscillatory: return "oscillatory";
  }
  return "?";
}

std::optional<MatrixClass> parse_matrix_class(std::string_view name) {
  for (MatrixClass c : kAllMatrixClasses)
    if (name == to_string(c)) return c;
  return std::nullopt;
}

bool MatrixClassReport::get(MatrixClass c) const {
  switch (c) {
    case MatrixClass::Positive: return positive;
    case MatrixClass::RealSymmetric: return real_symmetric;
    case MatrixClass::Hermitian: return hermitian;
    case MatrixClass::BoundedSymbol: return bounded_symbol;
    case MatrixClass::PositiveDefinite: return positive_definite;
    case MatrixClass::PositiveSemidefinite: return positive_semidefinite;
    case MatrixClass::Normal: return normal;
    case MatrixClass::Greens: return greens;
    case MatrixClass::TotallyPositive: return totally_positive;
    case MatrixClass::Oscillatory: return oscillatory;
  }
  return false;
}

MatrixClassReport classify_params(const KmsParams& p) {
  const bool real = p.is_real();
  const double r = p.rho.real();
  MatrixClassReport out;
  out.positive = real && r > 0.0;
  out.real_symmetric = real;
  out.hermitian = real;
  out.bounded_symbol = std::abs(p.rho) < 1.0;
  out.positive_definite = real && r > -1.0 && r < 1.0;
  out.positive_semidefinite = real && r >= -1.0 && r <= 1.0;
  out.normal = real || p.n == 2;
  out.greens = real && r != 0.0;
  out.totally_positive = real && r >= 0.0 && r <= 1.0;
  out.oscillatory = real && r > 0.0 && r < 1.0;
  return out;
}

std::pair<std::vector<double>, std::vector<double>> greens_factors(const KmsParams& p) {
  if (!p.is_real()) throw InvalidParameter("Green's factors need real rho");
  const double r = p.rho.real();
  if (r == 0.0) throw InvalidParameter("K_n(0) is not a Green's matrix");
  std::vector<double> alpha(p.n), beta(p.n);
  for (int j = 1; j <= p.n; ++j) {
    beta[j - 1] = std::pow(r, j);
    alpha[j - 1] = std::pow(r, -j);
  }
  return {alpha, beta};
}

int bruteforce_cap(MatrixClass c) {
  return (c == MatrixClass::TotallyPositive || c == MatrixClass::Oscillatory) ? 6 : 12;
}

bool bruteforce_flag(const KmsParams& p, MatrixClass c) {
  const int cap = bruteforce_cap(c);
  if (p.n > cap)
    throw SizeLimitError(std::string("brute-force ") + to_string(c) + " check is capped at n = " +
                         std::to_string(cap));
  const DenseMatrix a = build_kms(p);
  const int n = a.size();
  switch (c) {
    case MatrixClass::Positive:
      return std::all_of(a.entries().begin(), a.entries().end(),
                         [](Complex z) { return z.imag() == 0.0 && z.real() > 0.0; });
    case MatrixClass::RealSymmetric:
      return entries_real(a) && is_hermitian(a);
    case MatrixClass::Hermitian:
      return is_hermitian(a);
    case MatrixClass::BoundedSymbol:
      return symbol_summable(p.rho);
    case MatrixClass::PositiveDefinite:
      return is_hermitian(a) && min_real_eigenvalue(a) > kTol * std::max(1.0, a.inf_norm());
    case MatrixClass::PositiveSemidefinite:
      return is_hermitian(a) && min_real_eigenvalue(a) >= -kTol * std::max(1.0, a.inf_norm());
    case MatrixClass::Normal: {
      const DenseMatrix ac = a.conj();
      const double norm = a.inf_norm();
      return (a * ac).max_abs_diff(ac * a) <= kTol * std::max(1.0, norm * norm);
    }
    case MatrixClass::Greens:
      return is_greens(a);
    case MatrixClass::TotallyPositive:
      return is_totally_positive(a);
    case MatrixClass::Oscillatory: {
      if (!is_totally_positive(a)) return false;
      if (std::abs(oracle_lu_determinant(a)) <= kTol) return false;
      for (int j = 0; j + 1 < n; ++j)
        if (!(a(j, j + 1).real() > 0.0) || !(a(j + 1, j).real() > 0.0)) return false;
      return true;
    }
  }
  return false;
}

bool verify_class_bruteforce(const KmsParams& p, MatrixClass c) {
  return bruteforce_flag(p, c) == classify_params(p).get(c);
}

}  // namespace kms
