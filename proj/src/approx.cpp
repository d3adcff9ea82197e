#include "kms/approx.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "kms/complexspectrum.hpp"
#include "kms/realspectrum.hpp"

namespace kms {
namespace {

constexpr double kPi = std::numbers::pi;

void normalize(std::vector<Complex>& y) {
  double m = 0.0;
  for (const Complex& v : y) m = std::max(m, std::abs(v));
  if (m == 0.0) return;
  for (Complex& v : y) v /= m;
}

std::vector<double> exact_real(int n, double rho) {
  SpectrumOptions opt;
  opt.vectors = false;
  const SpectrumResult res = real_spectrum(KmsParams(n, rho), opt);
  std::vector<double> out(n);
  for (const EigenPair& e : res.pairs) out[e.k] = e.lambda;
  return out;
}

}  // namespace

ApproxReport make_report(std::vector<double> approx, std::vector<double> exact) {
  if (approx.size() != exact.size()) throw InvalidParameter("report sizes differ");
  ApproxReport r{std::move(approx), std::move(exact), 0.0};
  for (std::size_t i = 0; i < r.exact_values.size(); ++i) {
    const double ex = r.exact_values[i];
    const double diff = std::abs(r.approx_values[i] - ex);
    r.max_rel_error = std::max(r.max_rel_error, std::abs(ex) < 1e-12 ? diff : diff / std::abs(ex));
  }
  return r;
}

LargeEigs large_eigs(int n, Complex rho) {
  if (n < 2) throw InvalidParameter("n must be >= 2");
  const double mag = std::abs(rho);
  if (!(mag > 1.0)) throw InvalidParameter("large_eigs needs |rho| > 1");
  if ((n + 1) * std::log(mag) >= std::log(DBL_MAX))
    throw OverflowError("|rho|^(n+1) exceeds double range");
  LargeEigs out;
  const Complex lead = ipow(rho, n + 1) / (rho * rho - 1.0);
  out.lambda0 = lead;
  out.lambda1 = -lead;
  out.y0.resize(n);
  out.y1.resize(n);
  // rho^{h-j} and rho^{j-h} with h = (n-1)/2; the larger one has |.| <= |rho|^h.
  const Complex lr = std::log(rho);
  const double h = 0.5 * (n - 1);
  for (int j = 0; j < n; ++j) {
    const Complex a = std::exp(lr * (h - j));
    const Complex b = std::exp(lr * (j - h));
    out.y0[j] = a + b;
    out.y1[j] = a - b;
  }
  normalize(out.y0);
  normalize(out.y1);
  return out;
}

double regula_falsi_mu(int n, double rho, int k) {
  if (n < 2) throw InvalidParameter("n must be >= 2");
  if (k < 0 || k >= n) throw InvalidParameter("k out of range");
  if (!(rho >= 0.0)) throw InvalidParameter("regula_falsi_mu needs rho >= 0");
  const double beta = k * kPi / n;
  if (rho <= 1.0) {
    const double gamma = (k + 1) * kPi / (n + 1);
    return beta * rho + gamma * (1.0 - rho);
  }
  if (k < 2) throw DomainError("no regula falsi form for k = 0, 1 when rho > 1");
  const double alpha = (k - 1) * kPi / (n - 1);
  return (beta - alpha) / rho + alpha;
}

double lambda_from_trig_mu(double rho, double mu) {
  const double s = std::sin(0.5 * mu);
  return (1.0 - rho * rho) / ((1.0 - rho) * (1.0 - rho) + 4.0 * rho * s * s);
}

std::vector<double> near_one_eigs(int n, double rho) {
  if (n < 2) throw InvalidParameter("n must be >= 2");
  std::vector<double> out(n);
  out[0] = n + (double(n) * n - 1.0) / 3.0 * (rho - 1.0);
  for (int k = 1; k < n; ++k) out[k] = (1.0 - rho) / (1.0 - std::cos(k * kPi / n));
  return out;
}

ApproxReport large_eigs_report(int n, Complex rho) {
  const LargeEigs a = large_eigs(n, rho);
  const ComplexSpectrumResult ex = complex_spectrum(KmsParams(n, rho), false);
  // pairs are sorted by descending |lambda|.
  Complex e0 = ex.pairs.at(0).lambda, e1 = ex.pairs.at(1).lambda;
  if (std::abs(a.lambda0 - e1) + std::abs(a.lambda1 - e0) <
      std::abs(a.lambda0 - e0) + std::abs(a.lambda1 - e1))
    std::swap(e0, e1);
  return make_report({std::abs(a.lambda0), std::abs(a.lambda1)}, {std::abs(e0), std::abs(e1)});
}

ApproxReport regula_falsi_report(int n, double rho) {
  const std::vector<double> exact = exact_real(n, rho);
  std::vector<double> ap, ex;
  for (int k = rho > 1.0 ? 2 : 0; k < n; ++k) {
    // At rho = 1 the k = 0 form is 0/0; its limit is n.
    ap.push_back(rho == 1.0 && k == 0 ? double(n)
                                      : lambda_from_trig_mu(rho, regula_falsi_mu(n, rho, k)));
    ex.push_back(exact[k]);
  }
  return make_report(std::move(ap), std::move(ex));
}

ApproxReport near_one_report(int n, double rho) {
  return make_report(near_one_eigs(n, rho), exact_real(n, rho));
}

}  // namespace kms
