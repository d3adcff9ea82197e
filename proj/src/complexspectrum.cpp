#include "kms/complexspectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "kms/polyroots.hpp"
#include "kms/realspectrum.hpp"

namespace kms {
namespace {

constexpr double kPi = std::numbers::pi;

bool degenerate_real(const KmsParams& p) {
  if (!p.is_real()) return false;
  const double r = std::abs(p.rho.real());
  const double xi = p.xi();
  return r == 0.0 || std::abs(r - 1.0) <= 1e-14 || std::abs(r - xi) <= 1e-14 * xi;
}

std::vector<Complex> roots_of(const Polynomial& q, const char* name) {
  try {
    return find_roots(q);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("root finding failed for ") + name + ": " + e.what());
  }
}

Polynomial deflate(const Polynomial& p, Complex root) { return p.divide_linear(root).first; }

// Pairs z with 1/z inside one factor's zeros and returns the representative
// of each pair.
std::vector<Complex> pair_representatives(std::vector<Complex> zs) {
  std::sort(zs.begin(), zs.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  std::vector<bool> used(zs.size(), false);
  std::vector<Complex> reps;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::size_t best = zs.size();
    double best_err = HUGE_VAL;
    for (std::size_t j = 0; j < zs.size(); ++j) {
      if (used[j]) continue;
      const double err = std::abs(zs[i] * zs[j] - 1.0);
      if (err < best_err) {
        best_err = err;
        best = j;
      }
    }
    if (best == zs.size() || best_err > 1e-6 * (1.0 + std::abs(zs[i])))
      throw ConsistencyError("zeros of p_2n do not close under inversion");
    used[best] = true;
    const Complex a = zs[i], b = zs[best];
    Complex rep = std::abs(a) >= std::abs(b) ? a : b;
    if (std::abs(std::abs(a) - 1.0) <= 1e-12 && std::abs(std::abs(b) - 1.0) <= 1e-12)
      rep = a.imag() >= 0.0 ? a : b;
    reps.push_back(rep);
  }
  return reps;
}

std::vector<Complex> pair_vector(int n, Complex z, ZeroType type) {
  // sin / cos(mu (j - (n-1)/2)) scaled by z^{-(n-1)/2}: z^{j-n+1} -+ z^{-j}.
  std::vector<Complex> y(n);
  const Complex w = 1.0 / z;
  std::vector<Complex> wp(n);
  wp[0] = 1.0;
  for (int j = 1; j < n; ++j) wp[j] = wp[j - 1] * w;
  const double sgn = type == ZeroType::Type1 ? -1.0 : 1.0;
  for (int j = 0; j < n; ++j) y[j] = wp[n - 1 - j] + sgn * wp[j];
  return y;
}

void normalize_complex(std::vector<Complex>& y) {
  std::size_t arg = 0;
  for (std::size_t j = 1; j < y.size(); ++j)
    if (std::abs(y[j]) > std::abs(y[arg]) * (1.0 + 1e-12)) arg = j;
  const Complex pivot = y[arg];
  if (pivot == 0.0) return;
  for (Complex& v : y) v /= pivot;
}

void sort_pairs(std::vector<ComplexEigenPair>& pairs) {
  double top = 0.0;
  for (const auto& e : pairs) top = std::max(top, std::abs(e.lambda));
  if (top == 0.0 || !std::isfinite(top)) top = 1.0;
  auto key = [top](const ComplexEigenPair& e) {
    return std::llround(std::abs(e.lambda) / top * 1e12);
  };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const ComplexEigenPair& a, const ComplexEigenPair& b) {
                     const auto ka = key(a), kb = key(b);
                     if (ka != kb) return ka > kb;
                     return std::arg(a.lambda) < std::arg(b.lambda);
                   });
}

ComplexSpectrumResult from_real(const KmsParams& p, bool vectors) {
  SpectrumOptions opt;
  opt.vectors = vectors;
  const SpectrumResult rs = real_spectrum(p, opt);
  const bool negated = p.rho.real() < 0.0;
  ComplexSpectrumResult out{p, {}, rs.diagnostics.max_residual, rs.diagnostics.trace_error, true,
                            {"delegated to the real solver"}};
  for (const EigenPair& e : rs.pairs) {
    ComplexEigenPair c;
    c.lambda = e.lambda;
    c.zero_type = e.zero_type;
    Complex z = e.mu.kind == RootKind::Trigonometric ? std::polar(1.0, e.mu.value)
                                                     : Complex(std::exp(e.mu.value), 0.0);
    if (negated) {
      z = -z;
      if (std::abs(std::abs(z) - 1.0) <= 1e-12 && z.imag() < 0.0) z = std::conj(z);
    }
    c.z = z;
    c.mu = Complex(0.0, -1.0) * std::log(z);
    for (double v : e.vector) c.vector.emplace_back(v, 0.0);
    out.pairs.push_back(std::move(c));
  }
  sort_pairs(out.pairs);
  return out;
}

}  // namespace

SplitZeros p2n_zeros_split(const KmsParams& p) {
  if (degenerate_real(p))
    throw InvalidParameter("p_2n zeros are not split for rho in {0, +-1, +-xi_n}");
  const int n = p.n;
  Polynomial s = poly_s(n, p.rho), c = poly_c(n, p.rho);
  if (n % 2 == 0) {
    s = deflate(s, 1.0);
    c = deflate(c, -1.0);
  } else {
    s = deflate(deflate(s, 1.0), -1.0);
  }
  SplitZeros out{roots_of(s, "s_{n+1}"), roots_of(c, "c_{n+1}")};

  const Polynomial p2n = poly_p2n(n, p.rho);
  const double scale = p2n.max_abs_coeff();
  auto check = [&](const std::vector<Complex>& zs) {
    for (const Complex& z : zs) {
      const double bound = 1e-8 * scale * std::pow(std::max(1.0, std::abs(z)), 2 * n);
      if (!(std::abs(p2n(z)) <= bound))
        throw ConvergenceError("zero of p_2n failed its residual check");
    }
  };
  check(out.type1);
  check(out.type2);
  return out;
}

std::vector<Complex> p2n_zeros(const KmsParams& p) {
  SplitZeros s = p2n_zeros_split(p);
  std::vector<Complex> all = std::move(s.type1);
  all.insert(all.end(), s.type2.begin(), s.type2.end());
  return all;
}

ComplexSpectrumResult complex_spectrum(const KmsParams& p, bool vectors) {
  if (degenerate_real(p)) return from_real(p, vectors);

  const int n = p.n;
  const SplitZeros zs = p2n_zeros_split(p);
  ComplexSpectrumResult out{p, {}, 0.0, 0.0, false, {}};
  for (ZeroType type : {ZeroType::Type1, ZeroType::Type2}) {
    const auto& group = type == ZeroType::Type1 ? zs.type1 : zs.type2;
    for (const Complex& z : pair_representatives(group)) {
      ComplexEigenPair e;
      e.z = z;
      e.zero_type = type;
      e.lambda = typed_zero_to_eigenvalue(n, p.rho, z, type);
      e.mu = Complex(0.0, -1.0) * std::log(z);
      if (vectors) {
        e.vector = pair_vector(n, z, type);
        normalize_complex(e.vector);
      }
      out.pairs.push_back(std::move(e));
    }
  }
  if (int(out.pairs.size()) != n)
    throw ConsistencyError("paired zeros do not give n eigenvalues");

  const double mag = std::abs(p.rho);
  const bool can_multiply = mag <= 1.0 || (n - 1) * std::log(mag) < std::log(DBL_MAX) - 2.0;
  if (vectors && can_multiply) {
    const double knorm = kms_inf_norm(p);
    for (const auto& e : out.pairs)
      out.max_residual = std::max(out.max_residual, eigen_residual(p, e.lambda, e.vector) / knorm);
  }
  Complex sum = 0.0;
  double abs_sum = 0.0;
  for (const auto& e : out.pairs) {
    sum += e.lambda;
    abs_sum += std::abs(e.lambda);
  }
  out.trace_error = std::abs(sum - double(n)) / std::max(double(n), abs_sum);
  sort_pairs(out.pairs);
  return out;
}

Polynomial double_locus_poly(int n, ZeroType type) {
  if (type == ZeroType::Type1 && n < 4) throw InvalidParameter("type-1 loci need n >= 4");
  if (type == ZeroType::Type2 && n < 3) throw InvalidParameter("type-2 loci need n >= 3");
  const Polynomial u = chebyshev_u_poly(n - 1);
  const double shift = type == ZeroType::Type1 ? -double(n) : double(n);
  Polynomial q = u + Polynomial::constant(shift);
  auto strip = [&](double root) {
    auto [quot, rem] = q.divide_linear(root);
    if (std::abs(rem) > 1e-9 * q.max_abs_coeff())
      throw ConsistencyError("expected factor missing from the locus polynomial");
    q = quot;
  };
  if (type == ZeroType::Type1) {
    strip(1.0);
    if (n % 2 == 1) strip(-1.0);
  } else if (n % 2 == 0) {
    strip(-1.0);
  }
  return q;
}

std::vector<DoubleEigenLocus> double_eigen_loci(int n, ZeroType type) {
  const Polynomial q = double_locus_poly(n, type);
  const double xi = double(n + 1) / (n - 1);
  const double lambda = -double(n);
  std::vector<DoubleEigenLocus> out;
  std::string failures;
  for (const Complex& t0 : find_roots(q)) {
    const Complex ac = std::acos(t0);
    const Complex tp = std::cos(0.5 * (n + 1) * ac);
    const Complex tm = std::cos(0.5 * (n - 1) * ac);
    DoubleEigenLocus loc;
    loc.n = n;
    loc.type_tag = type;
    loc.t0 = t0;
    loc.rho = (type == ZeroType::Type1 ? xi : 1.0) * tp / tm;

    // Magnitude scales of the psi and psi' recurrences.
    const Complex r2 = loc.rho * loc.rho;
    const double A = std::abs(r2 - 1.0 + lambda * (1.0 + r2));
    const double B = std::abs(lambda * lambda * r2);
    const double dA = std::abs(1.0 + r2), dB = std::abs(2.0 * lambda * r2);
    double P0 = 1.0, P1 = std::abs(lambda) + 1.0, D0 = 0.0, D1 = 1.0;
    for (int j = 2; j <= n; ++j) {
      const double P2 = A * P1 + B * P0;
      const double D2 = dA * P1 + A * D1 + dB * P0 + B * D0;
      P0 = P1;
      P1 = P2;
      D0 = D1;
      D1 = D2;
    }
    const auto [psi, dpsi] = char_poly_eval_with_derivative(n, loc.rho, lambda);
    loc.psi_residual = std::abs(psi) / P1;
    loc.dpsi_residual = std::abs(dpsi) / D1;
    const bool ok = std::isfinite(loc.rho.real()) && std::isfinite(loc.rho.imag()) &&
                    loc.psi_residual <= 1e-7 && loc.dpsi_residual <= 1e-7;
    if (!ok) {
      failures += " t0=(" + std::to_string(t0.real()) + "," + std::to_string(t0.imag()) + ")";
      continue;
    }
    out.push_back(loc);
  }
  if (!failures.empty())
    throw VerificationFailure("unverified double-eigenvalue loci:" + failures);
  return out;
}

double distance_to_symbol_range(const KmsParams& p, Complex lambda) {
  const int grid = 4096;
  auto dist = [&](double theta) {
    try {
      return std::abs(lambda - symbol_sigma(p.rho, theta));
    } catch (const PoleError&) {
      return HUGE_VAL;
    }
  };
  // sigma is even in theta, so [0, pi] covers the range.
  int best_i = 0;
  double best = HUGE_VAL;
  for (int i = 0; i <= grid; ++i) {
    const double d = dist(kPi * i / grid);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  double a = kPi * std::max(0, best_i - 1) / grid;
  double b = kPi * std::min(grid, best_i + 1) / grid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = dist(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace kms
