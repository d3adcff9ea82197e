#include "kms/chebpoly.hpp"

#include <algorithm>
#include <cmath>

#include "kms/matrix.hpp"
#include "kms/polyroots.hpp"

namespace kms {

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
  trim();
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> Polynomial::eval_with_derivative(Complex z) const {
  Complex f = 0.0, df = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    df = df * z + f;
    f = f * z + *it;
  }
  return {f, df};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() == 1) return Polynomial();
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  std::vector<Complex> out(c_.size() + rhs.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<Complex> out(std::max(c_.size(), rhs.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] += rhs.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  std::vector<Complex> out(std::max(c_.size(), rhs.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] -= rhs.c_[i];
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Complex> Polynomial::divide_linear(Complex root) const {
  const int m = degree();
  if (m == 0) return {Polynomial(), c_[0]};
  std::vector<Complex> q(m);
  Complex carry = c_[m];
  for (int k = m - 1; k >= 0; --k) {
    q[k] = carry;
    carry = c_[k] + carry * root;
  }
  return {Polynomial(std::move(q)), carry};
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& a : c_) m = std::max(m, std::abs(a));
  return m;
}

bool Polynomial::approx_equal(const Polynomial& other, double rel_tol) const {
  const double scale = std::max({max_abs_coeff(), other.max_abs_coeff(), 1e-300});
  const std::size_t len = std::max(c_.size(), other.c_.size());
  for (std::size_t k = 0; k < len; ++k) {
    const Complex a = k < c_.size() ? c_[k] : 0.0;
    const Complex b = k < other.c_.size() ? other.c_[k] : 0.0;
    if (std::abs(a - b) > rel_tol * scale) return false;
  }
  return true;
}

const char* to_string(ZeroType t) {
  return t == ZeroType::Type1 ? "type-1" : "type-2";
}

const char* to_string(SelfInversiveKind k) {
  switch (k) {
    case SelfInversiveKind::Reciprocal: return "reciprocal";
    case SelfInversiveKind::AntiReciprocal: return "anti-reciprocal";
    case SelfInversiveKind::General: return "self-inversive";
    case SelfInversiveKind::NotSelfInversive: return "not-self-inversive";
  }
  return "?";
}

Complex chebyshev_u(int k, Complex t) {
  if (k < 0) throw InvalidParameter("Chebyshev index must be non-negative");
  Complex prev = 1.0, cur = 2.0 * t;
  if (k == 0) return prev;
  for (int j = 1; j < k; ++j) {
    const Complex next = 2.0 * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double chebyshev_u(int k, double t) { return chebyshev_u(k, Complex(t)).real(); }

Polynomial chebyshev_u_poly(int k) {
  if (k < 0) throw InvalidParameter("Chebyshev index must be non-negative");
  const Polynomial two_t({0.0, 2.0});
  Polynomial prev = Polynomial::constant(1.0);
  if (k == 0) return prev;
  Polynomial cur = two_t;
  for (int j = 1; j < k; ++j) {
    Polynomial next = two_t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial char_poly_recurrence(int n, Complex rho) {
  if (n < 0) throw InvalidParameter("n must be non-negative");
  const Complex r2 = rho * rho;
  // psi_n = [rho^2 - 1 + lambda (1 + rho^2)] psi_{n-1} - (lambda rho)^2 psi_{n-2}
  const Polynomial lin({r2 - 1.0, 1.0 + r2});
  const Polynomial quad({0.0, 0.0, r2});
  Polynomial prev = Polynomial::constant(1.0);
  if (n == 0) return prev;
  Polynomial cur({-1.0, 1.0});
  for (int j = 2; j <= n; ++j) {
    Polynomial next = lin * cur - quad * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::pair<Complex, Complex> char_poly_eval_with_derivative(int n, Complex rho,
                                                           Complex lambda) {
  if (n < 0) throw InvalidParameter("n must be non-negative");
  const Complex r2 = rho * rho;
  Complex p0 = 1.0, d0 = 0.0;
  if (n == 0) return {p0, d0};
  Complex p1 = lambda - 1.0, d1 = 1.0;
  for (int j = 2; j <= n; ++j) {
    const Complex a = r2 - 1.0 + lambda * (1.0 + r2);
    const Complex b = lambda * lambda * r2;
    const Complex p2 = a * p1 - b * p0;
    const Complex d2 = (1.0 + r2) * p1 + a * d1 - 2.0 * lambda * r2 * p0 - b * d0;
    p0 = p1;
    d0 = d1;
    p1 = p2;
    d1 = d2;
  }
  return {p1, d1};
}

Complex char_poly_eval_recurrence(int n, Complex rho, Complex lambda) {
  return char_poly_eval_with_derivative(n, rho, lambda).first;
}

Complex tau_value(Complex rho, Complex lambda) {
  if (rho == 0.0 || lambda == 0.0) throw InvalidParameter("tau undefined for rho = 0 or lambda = 0");
  return (rho * rho * (lambda + 1.0) + lambda - 1.0) / (2.0 * lambda * rho);
}

Complex char_poly_eval(int n, Complex rho, Complex lambda) {
  const Complex r2 = rho * rho;
  if (n < 2 || rho == 0.0 || r2 == 1.0 || lambda == 0.0)
    return char_poly_eval_recurrence(n, rho, lambda);
  const Complex tau = tau_value(rho, lambda);
  // U_{n-2}, U_{n-1}, U_n in one sweep.
  Complex um2 = 1.0, um1 = 2.0 * tau;
  for (int j = 1; j < n - 1; ++j) {
    const Complex next = 2.0 * tau * um1 - um2;
    um2 = um1;
    um1 = next;
  }
  const Complex un = 2.0 * tau * um1 - um2;
  return ipow(lambda * rho, n) / (1.0 - r2) * (un - 2.0 * rho * um1 + r2 * um2);
}

Polynomial poly_p2n(int n, Complex rho) {
  if (n < 2) throw InvalidParameter("p_2n needs n >= 2");
  std::vector<Complex> c(2 * n + 1);
  const Complex even = 1.0 + rho * rho;
  for (int k = 0; k <= 2 * n; ++k) c[k] = (k % 2 == 1) ? -2.0 * rho : even;
  c.front() = c.back() = 1.0;
  return Polynomial(std::move(c));
}

Polynomial poly_s(int n, Complex rho) {
  if (n < 2) throw InvalidParameter("s_{n+1} needs n >= 2");
  std::vector<Complex> c(n + 2, 0.0);
  c[0] = -1.0;
  c[1] = rho;
  c[n] = -rho;
  c[n + 1] = 1.0;
  return Polynomial(std::move(c));
}

Polynomial poly_c(int n, Complex rho) {
  if (n < 2) throw InvalidParameter("c_{n+1} needs n >= 2");
  std::vector<Complex> c(n + 2, 0.0);
  c[0] = 1.0;
  c[1] = -rho;
  c[n] = -rho;
  c[n + 1] = 1.0;
  return Polynomial(std::move(c));
}

SelfInversiveResult is_self_inversive(const Polynomial& p, double rel_tol) {
  const int m = p.degree();
  const Complex a0 = p[0];
  const double tol = rel_tol * p.max_abs_coeff();
  if (std::abs(a0) <= tol) return {SelfInversiveKind::NotSelfInversive, 0.0};
  // a_m = eps conj(a_0) fixes eps; it must be unimodular and fit every k.
  const Complex eps = p.leading() / std::conj(a0);
  if (std::abs(std::abs(eps) - 1.0) > rel_tol * 16) return {SelfInversiveKind::NotSelfInversive, 0.0};
  for (int k = 0; k <= m; ++k)
    if (std::abs(p[k] - eps * std::conj(p[m - k])) > tol)
      return {SelfInversiveKind::NotSelfInversive, 0.0};
  if (std::abs(eps - 1.0) <= rel_tol * 16) return {SelfInversiveKind::Reciprocal, 1.0};
  if (std::abs(eps + 1.0) <= rel_tol * 16) return {SelfInversiveKind::AntiReciprocal, -1.0};
  return {SelfInversiveKind::General, eps};
}

Complex zero_to_eigenvalue(Complex rho, Complex z) {
  const Complex r2 = rho * rho;
  if (rho == 0.0 || r2 == 1.0) throw InvalidParameter("rho must avoid {-1, 0, 1}");
  if (z == 0.0) throw InvalidParameter("z must be nonzero");
  const Complex den = (z - rho) * (1.0 - rho * z);
  if (std::abs(den) <= 1e-15 * std::max(1.0, std::abs(z) * (1.0 + std::abs(rho)) * (1.0 + std::abs(rho))))
    throw PoleError("z coincides with rho or 1/rho");
  return z * (1.0 - r2) / den;
}

std::pair<Complex, Complex> eigenvalue_to_zeros(Complex rho, Complex lambda) {
  const Complex tau = tau_value(rho, lambda);
  const Complex root = std::sqrt(tau * tau - 1.0);
  Complex a = tau + root, b = tau - root;
  // Form the larger member directly, the smaller as its reciprocal.
  if (std::abs(b) > std::abs(a)) std::swap(a, b);
  const double ma = std::abs(a);
  b = 1.0 / a;
  if (std::abs(ma - std::abs(b)) <= 1e-12 * ma && a.imag() < 0.0) std::swap(a, b);
  return {a, b};
}

ZeroType classify_zero(int n, Complex rho, Complex z) {
  if (z == 0.0) throw InvalidParameter("zero of p_2n is never 0");
  // Both factors map z -> 1/z onto themselves up to z^{n+1}; compare inside
  // the unit disc where the values are not inflated by |z|^{n+1}.
  const Complex w = std::abs(z) > 1.0 ? 1.0 / z : z;
  const double rs = std::abs(poly_s(n, rho)(w));
  const double rc = std::abs(poly_c(n, rho)(w));
  const double tol = 1e-8 * std::pow(1.0 + std::abs(rho), n + 1);
  if (std::min(rs, rc) > tol)
    throw AmbiguityError("zero vanishes on neither s_{n+1} nor c_{n+1}");
  return rs < rc ? ZeroType::Type1 : ZeroType::Type2;
}

Complex typed_zero_to_eigenvalue(int n, Complex rho, Complex z, ZeroType type) {
  const Complex r2 = rho * rho;
  Complex lambda;
  if (std::abs(z) >= 1.0) {
    const Complex d = 1.0 - rho * z;
    lambda = ipow(z, n + 1) * (1.0 - r2) / (d * d);
  } else {
    const Complex d = z - rho;
    lambda = ipow(1.0 / z, n - 1) * (1.0 - r2) / (d * d);
  }
  return type == ZeroType::Type1 ? lambda : -lambda;
}

bool cohn_all_zeros_on_unit_circle(const Polynomial& p, double tol) {
  if (is_self_inversive(p).kind == SelfInversiveKind::NotSelfInversive) return false;
  for (const Complex& w : find_roots(p.derivative()))
    if (std::abs(w) > 1.0 + tol) return false;
  return true;
}

}  // namespace kms
