#include "kms/polyroots.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace kms {
namespace {

constexpr double kEps = DBL_EPSILON;

// Eigenvalues of the square upper Hessenberg block h (row-major, m x m).
// Only the active block is updated, which is enough for eigenvalues.
std::vector<Complex> hessenberg_eigenvalues(std::vector<Complex> h, int m) {
  auto H = [&](int j, int k) -> Complex& { return h[std::size_t(j) * m + k]; };
  std::vector<Complex> eig;
  eig.reserve(m);

  double norm = 0.0;
  for (const Complex& z : h) norm = std::max(norm, std::abs(z));
  if (norm == 0.0) return std::vector<Complex>(m, 0.0);

  std::vector<double> cs(m);
  std::vector<Complex> sn(m);
  int hi = m - 1;
  int iter = 0, total = 0;
  while (hi >= 0) {
    if (hi == 0) {
      eig.push_back(H(0, 0));
      --hi;
      continue;
    }
    int lo = hi;
    while (lo > 0) {
      double s = std::abs(H(lo - 1, lo - 1)) + std::abs(H(lo, lo));
      if (s == 0.0) s = norm;
      if (std::abs(H(lo, lo - 1)) <= kEps * s) {
        H(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(H(hi, hi));
      --hi;
      iter = 0;
      continue;
    }
    const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
    const Complex c = H(hi, hi - 1), d = H(hi, hi);
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    if (lo == hi - 1) {
      eig.push_back(half_tr + disc);
      eig.push_back(half_tr - disc);
      hi -= 2;
      iter = 0;
      continue;
    }
    if (++total > 60 * m) throw ConvergenceError("companion QR iteration did not converge");
    ++iter;

    Complex shift;
    if (iter % 11 == 10) {
      // Exceptional shift to break cycles.
      shift = d + Complex(0.75 * std::abs(c), 0.4 * std::abs(H(hi - 1, hi - 2)));
    } else {
      const Complex mu1 = half_tr + disc, mu2 = half_tr - disc;
      shift = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    }

    for (int k = lo; k <= hi; ++k) H(k, k) -= shift;
    for (int k = lo; k < hi; ++k) {
      const Complex x = H(k, k), y = H(k + 1, k);
      const double ax = std::abs(x);
      const double r = std::hypot(ax, std::abs(y));
      if (r == 0.0) {
        cs[k] = 1.0;
        sn[k] = 0.0;
        continue;
      }
      if (ax == 0.0) {
        cs[k] = 0.0;
        sn[k] = std::conj(y) / std::abs(y);
      } else {
        cs[k] = ax / r;
        sn[k] = (x / ax) * std::conj(y) / r;
      }
      for (int j = k; j <= hi; ++j) {
        const Complex h1 = H(k, j), h2 = H(k + 1, j);
        H(k, j) = cs[k] * h1 + sn[k] * h2;
        H(k + 1, j) = -std::conj(sn[k]) * h1 + cs[k] * h2;
      }
    }
    for (int k = lo; k < hi; ++k) {
      const int last = std::min(k + 2, hi);
      for (int i = lo; i <= last; ++i) {
        const Complex h1 = H(i, k), h2 = H(i, k + 1);
        H(i, k) = h1 * cs[k] + h2 * std::conj(sn[k]);
        H(i, k + 1) = -h1 * sn[k] + h2 * cs[k];
      }
    }
    for (int k = lo; k <= hi; ++k) H(k, k) += shift;
  }
  return eig;
}

double abs_eval_scale(const Polynomial& p, Complex z) {
  const double r = std::abs(z);
  double s = 0.0;
  for (int k = p.degree(); k >= 0; --k) s = s * r + std::abs(p[k]);
  return s;
}

Complex newton_polish(const Polynomial& p, Complex z) {
  double best = std::abs(p(z));
  for (int it = 0; it < 40 && best > 0.0; ++it) {
    const auto [f, df] = p.eval_with_derivative(z);
    if (df == 0.0) break;
    const Complex cand = z - f / df;
    const double r = std::abs(p(cand));
    if (!(r < best)) break;
    z = cand;
    best = r;
  }
  return z;
}

}  // namespace

std::vector<Complex> find_roots(const Polynomial& p) {
  const int m = p.degree();
  if (m < 1) {
    if (p[0] == 0.0) throw InvalidParameter("the zero polynomial has no isolated roots");
    return {};
  }
  if (p.leading() == 0.0) throw InvalidParameter("leading coefficient is zero");
  if (m == 1) return {-p[0] / p[1]};

  std::vector<Complex> comp(std::size_t(m) * m, 0.0);
  const Complex lead = p.leading();
  for (int k = 0; k < m; ++k) comp[k] = -p[m - 1 - k] / lead;
  for (int j = 1; j < m; ++j) comp[std::size_t(j) * m + (j - 1)] = 1.0;

  std::vector<Complex> roots = hessenberg_eigenvalues(std::move(comp), m);
  for (Complex& z : roots) z = newton_polish(p, z);

  const Polynomial dp = p.derivative();
  const Polynomial ddp = dp.derivative();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(roots[i] - roots[j]) > 1e-5 * (1.0 + std::abs(roots[i]))) continue;
      Complex w = 0.5 * (roots[i] + roots[j]);
      for (int it = 0; it < 30; ++it) {
        const Complex d2 = ddp(w);
        if (d2 == 0.0) break;
        const Complex step = dp(w) / d2;
        w -= step;
        if (std::abs(step) <= 4 * kEps * std::abs(w)) break;
      }
      if (std::abs(p(w)) <= 64 * kEps * abs_eval_scale(p, w) &&
          std::abs(w - roots[i]) < 1e-5 * (1.0 + std::abs(w))) {
        roots[i] = roots[j] = w;
      }
    }
  }
  return roots;
}

}  // namespace kms
