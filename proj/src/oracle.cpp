#include "kms/oracle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

namespace kms {
namespace {

using LD = long double;
using LC = std::complex<long double>;

constexpr LD kLdEps = LDBL_EPSILON;

struct LMatrix {
  int n;
  std::vector<LC> a;
  LC& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
};

LMatrix to_long(const DenseMatrix& m) {
  LMatrix out{m.size(), std::vector<LC>(m.entries().size())};
  for (std::size_t i = 0; i < out.a.size(); ++i)
    out.a[i] = LC(m.entries()[i].real(), m.entries()[i].imag());
  return out;
}

void reduce_to_hessenberg(LMatrix& h) {
  const int n = h.n;
  std::vector<LC> v(n);
  for (int k = 0; k + 2 < n; ++k) {
    LD alpha = 0;
    for (int i = k + 1; i < n; ++i) alpha += std::norm(h(i, k));
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    const LC x0 = h(k + 1, k);
    const LC phase = std::abs(x0) == 0 ? LC(1) : x0 / std::abs(x0);
    LD vn = 0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] += phase * alpha;
      vn += std::norm(v[i]);
    }
    if (vn == 0) continue;
    // H = I - 2 v v^* / |v|^2, applied on both sides.
    for (int j = 0; j < n; ++j) {
      LC s = 0;
      for (int i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= LD(2) / vn;
      for (int i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (int i = 0; i < n; ++i) {
      LC s = 0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= LD(2) / vn;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (int i = k + 2; i < n; ++i) h(i, k) = 0;
  }
}

std::vector<LC> hessenberg_qr(LMatrix& h) {
  const int n = h.n;
  std::vector<LC> eig;
  eig.reserve(n);
  LD norm = 0;
  for (const LC& z : h.a) norm = std::max(norm, std::abs(z));
  if (norm == 0) return std::vector<LC>(n, LC(0));

  std::vector<LD> c(n);
  std::vector<LC> s(n);
  int hi = n - 1, its = 0, total = 0;
  while (hi >= 0) {
    int lo = hi;
    while (lo > 0) {
      LD sc = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (sc == 0) sc = norm;
      if (std::abs(h(lo, lo - 1)) <= kLdEps * sc) {
        h(lo, lo - 1) = 0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig.push_back(h(hi, hi));
      --hi;
      its = 0;
      continue;
    }
    if (++total > 100 * n) throw ConvergenceError("oracle QR iteration did not converge");
    ++its;
    const LC a = h(hi - 1, hi - 1), b = h(hi - 1, hi), cc = h(hi, hi - 1), d = h(hi, hi);
    LC shift;
    if (its % 10 == 0) {
      shift = d + LC(std::abs(cc), 0);
    } else {
      const LC tr = LD(0.5) * (a + d);
      const LC disc = std::sqrt(LD(0.25) * (a - d) * (a - d) + b * cc);
      const LC m1 = tr + disc, m2 = tr - disc;
      shift = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    for (int k = lo; k <= hi; ++k) h(k, k) -= shift;
    for (int k = lo; k < hi; ++k) {
      const LC x = h(k, k), y = h(k + 1, k);
      const LD r = std::sqrt(std::norm(x) + std::norm(y));
      if (r == 0) {
        c[k] = 1;
        s[k] = 0;
        continue;
      }
      const LD ax = std::abs(x);
      if (ax == 0) {
        c[k] = 0;
        s[k] = std::conj(y) / std::abs(y);
      } else {
        c[k] = ax / r;
        s[k] = (x / ax) * std::conj(y) / r;
      }
      for (int j = k; j < n; ++j) {
        const LC h1 = h(k, j), h2 = h(k + 1, j);
        h(k, j) = c[k] * h1 + s[k] * h2;
        h(k + 1, j) = -std::conj(s[k]) * h1 + c[k] * h2;
      }
    }
    for (int k = lo; k < hi; ++k) {
      for (int i = 0; i <= std::min(k + 2, hi); ++i) {
        const LC h1 = h(i, k), h2 = h(i, k + 1);
        h(i, k) = h1 * c[k] + h2 * std::conj(s[k]);
        h(i, k + 1) = -h1 * s[k] + h2 * c[k];
      }
    }
    for (int k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return eig;
}

void sort_spectrum(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
}

// Number of eigenvalues of the Jacobi matrix (d, e) below x.
int sturm_count(const std::vector<LD>& d, const std::vector<LD>& e, LD x) {
  int count = 0;
  LD q = 1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const LD off2 = i == 0 ? LD(0) : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? LD(0) : off2 / q);
    if (q == 0) q = -kLdEps * (std::abs(d[i]) + std::abs(x) + LDBL_MIN);
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

const char* to_string(OracleMethod m) {
  return m == OracleMethod::SymmetricTridiagonal ? "symmetric-tridiagonal-reduction"
                                                 : "general-dense";
}

OracleSpectrum oracle_eig(const DenseMatrix& a) {
  if (a.size() > kOracleGeneralMax)
    throw SizeLimitError("oracle_eig general path is capped at n = " +
                         std::to_string(kOracleGeneralMax));
  LMatrix h = to_long(a);
  reduce_to_hessenberg(h);
  const std::vector<LC> ev = hessenberg_qr(h);
  OracleSpectrum out;
  out.method = OracleMethod::GeneralDense;
  for (const LC& z : ev) out.eigenvalues.emplace_back(double(z.real()), double(z.imag()));
  sort_spectrum(out.eigenvalues);
  return out;
}

OracleSpectrum oracle_eig_kms_dense(const KmsParams& p) { return oracle_eig(build_kms(p)); }

OracleSpectrum oracle_eig_kms(const KmsParams& p) {
  const double rho = p.rho.real();
  if (!p.is_real() || rho == 1.0 || rho == -1.0) return oracle_eig_kms_dense(p);
  if (p.n > kOracleSymmetricMax)
    throw SizeLimitError("oracle symmetric path is capped at n = " +
                         std::to_string(kOracleSymmetricMax));
  const int n = p.n;
  const LD r = rho;
  std::vector<LD> d(n, 1 + r * r), e(n - 1, -r);
  d.front() = d.back() = 1;

  LD bound = 0;
  for (int i = 0; i < n; ++i) {
    const LD left = i > 0 ? std::abs(e[i - 1]) : 0;
    const LD right = i + 1 < n ? std::abs(e[i]) : 0;
    bound = std::max(bound, std::abs(d[i]) + left + right);
  }
  OracleSpectrum out;
  out.method = OracleMethod::SymmetricTridiagonal;
  const LD scale = 1 - r * r;
  std::vector<LD> good, poor;
  for (int idx = 0; idx < n; ++idx) {
    // idx-th smallest eigenvalue of the Jacobi matrix.
    LD lo = -bound - 1, hi = bound + 1;
    for (int it = 0; it < 200; ++it) {
      const LD mid = (lo + hi) / 2;
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(d, e, mid) > idx) hi = mid;
      else lo = mid;
    }
    const LD tau = (lo + hi) / 2;
    // Bisection resolves tau only to about eps * bound, so tiny tau (huge
    // eigenvalues of K) lose relative accuracy.
    (std::abs(tau) < 1e-10L * bound ? poor : good).push_back(scale / tau);
  }
  if (poor.size() == 1 || poor.size() == 2) {
    // Recover them from trace(K) = n and det(K) = (1 - rho^2)^(n-1).
    LD sum = n, prod = std::pow(scale, LD(n - 1));
    for (LD v : good) {
      sum -= v;
      prod /= v;
    }
    if (poor.size() == 1) {
      poor[0] = sum;
    } else {
      const LD disc = std::sqrt(std::max<LD>(sum * sum / 4 - prod, 0));
      const LD big = sum / 2 + (sum >= 0 ? disc : -disc);
      poor[0] = big;
      poor[1] = prod / big;
    }
  }
  for (LD v : good) out.eigenvalues.emplace_back(double(v), 0.0);
  for (LD v : poor) out.eigenvalues.emplace_back(double(v), 0.0);
  sort_spectrum(out.eigenvalues);
  return out;
}

Complex oracle_lu_determinant(const DenseMatrix& m) {
  LMatrix a = to_long(m);
  const int n = a.n;
  LC det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) == 0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const LC f = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return Complex(double(det.real()), double(det.imag()));
}

std::vector<Complex> oracle_poly_roots(const Polynomial& p) {
  const int m = p.degree();
  if (m < 1) throw InvalidParameter("oracle_poly_roots needs degree >= 1");
  const Complex lead = p.leading();
  if (lead == 0.0) throw InvalidParameter("leading coefficient is zero");
  if (m > kOracleGeneralMax) throw SizeLimitError("polynomial degree above oracle cap");

  LMatrix comp{m, std::vector<LC>(std::size_t(m) * m, LC(0))};
  const LC ll(lead.real(), lead.imag());
  for (int k = 0; k < m; ++k) {
    const Complex a = p[m - 1 - k];
    comp(0, k) = -LC(a.real(), a.imag()) / ll;
  }
  for (int j = 1; j < m; ++j) comp(j, j - 1) = 1;
  const std::vector<LC> ev = hessenberg_qr(comp);

  std::vector<LC> coeff(m + 1);
  for (int k = 0; k <= m; ++k) coeff[k] = LC(p[k].real(), p[k].imag());
  auto eval = [&](LC z, LC& df) {
    LC f = 0;
    df = 0;
    for (int k = m; k >= 0; --k) {
      df = df * z + f;
      f = f * z + coeff[k];
    }
    return f;
  };
  std::vector<Complex> roots;
  roots.reserve(m);
  for (LC z : ev) {
    LC df;
    LD best = std::abs(eval(z, df));
    for (int it = 0; it < 3 && best > 0; ++it) {
      const LC f = eval(z, df);
      if (std::abs(df) == 0) break;
      const LC cand = z - f / df;
      LC dd;
      const LD r = std::abs(eval(cand, dd));
      if (!(r < best)) break;
      z = cand;
      best = r;
    }
    roots.emplace_back(double(z.real()), double(z.imag()));
  }
  return roots;
}

double oracle_minors(const DenseMatrix& a, int order) {
  const int n = a.size();
  if (n > 6) throw SizeLimitError("minor enumeration is capped at n = 6");
  if (order < 1 || order > n) throw InvalidParameter("minor order out of range");
  std::vector<int> rows(order), cols(order);
  double best = HUGE_VAL;
  // Iterate over all subsets encoded as bitmasks with `order` bits set.
  for (unsigned rm = 0; rm < (1u << n); ++rm) {
    if (__builtin_popcount(rm) != order) continue;
    for (int i = 0, c = 0; i < n; ++i)
      if (rm & (1u << i)) rows[c++] = i;
    for (unsigned cm = 0; cm < (1u << n); ++cm) {
      if (__builtin_popcount(cm) != order) continue;
      for (int j = 0, c = 0; j < n; ++j)
        if (cm & (1u << j)) cols[c++] = j;
      DenseMatrix sub(order);
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) sub(i, j) = a(rows[i], cols[j]);
      best = std::min(best, oracle_lu_determinant(sub).real());
    }
  }
  return best;
}

}  // namespace kms
