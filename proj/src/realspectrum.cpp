#include "kms/realspectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

namespace kms {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = DBL_EPSILON;
constexpr double kBoundaryWindow = 1e-14;

bool near_one(double rho) { return std::abs(rho - 1.0) <= kBoundaryWindow; }

bool near_xi(int n, double rho) {
  const double xi = double(n + 1) / double(n - 1);
  return std::abs(rho - xi) <= kBoundaryWindow * xi;
}

// Numerators of c - rho and s - rho with the pole factored out:
//   cos(A) - rho cos(B) = -2 sin(n mu/2) sin(mu/2) + (1 - rho) cos(B)
//   sin(A) - rho sin(B) =  2 cos(n mu/2) sin(mu/2) + (1 - rho) sin(B)
// where A = mu (n+1)/2, B = mu (n-1)/2. Both stay accurate near rho = 1.
double num_c(int n, double rho, double mu) {
  return -2.0 * std::sin(0.5 * n * mu) * std::sin(0.5 * mu) +
         (1.0 - rho) * std::cos(0.5 * (n - 1) * mu);
}

double num_s(int n, double rho, double mu) {
  return 2.0 * std::cos(0.5 * n * mu) * std::sin(0.5 * mu) +
         (1.0 - rho) * std::sin(0.5 * (n - 1) * mu);
}

// The same numerators for mu = i x, scaled by exp(-x (n+1)/2) so that they
// never overflow. The denominators cosh(B), sinh(B) are positive for x > 0.
double num_ch(int n, double rho, double x) {
  const double en = std::exp(-n * x), e1 = std::exp(-x);
  return 0.5 * std::expm1(-n * x) * std::expm1(-x) + 0.5 * (1.0 - rho) * (e1 + en);
}

double num_sh(int n, double rho, double x) {
  const double en = std::exp(-n * x), e1 = std::exp(-x);
  return 0.5 * (1.0 + en) * -std::expm1(-x) + 0.5 * (1.0 - rho) * (e1 - en);
}

double den_c(int n, double mu) { return std::cos(0.5 * (n - 1) * mu); }
double den_s(int n, double mu) { return std::sin(0.5 * (n - 1) * mu); }

// Bisection for g with g(lo) >= 0 >= g(hi), down to relative width tol,
// followed by one secant step clamped to the final bracket.
template <class G>
double bracket_root(G g, double lo, double hi, double tol) {
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= tol * std::max(std::abs(lo), std::abs(hi))) break;
    const double v = g(mid);
    if (v > 0.0) {
      lo = mid;
    } else if (v < 0.0) {
      hi = mid;
    } else {
      return mid;
    }
  }
  const double glo = g(lo), ghi = g(hi);
  if (glo > 0.0 && ghi < 0.0) {
    const double r = lo + (hi - lo) * (glo / (glo - ghi));
    return std::clamp(r, lo, hi);
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  return 0.5 * (lo + hi);
}

// Residual |f(mu) - rho| from numerator and denominator.
double ratio_residual(double num, double den) {
  return den == 0.0 ? HUGE_VAL : std::abs(num / den);
}

MuRoot trig_root(int n, double rho, int k, bool use_c, double lo, double hi, double tol,
                 bool shrink_lo) {
  const double mid = 0.5 * (lo + hi);
  const double sgn = (use_c ? den_c(n, mid) : den_s(n, mid)) < 0.0 ? -1.0 : 1.0;
  auto g = [&](double mu) {
    return sgn * (use_c ? num_c(n, rho, mu) : num_s(n, rho, mu));
  };
  if (shrink_lo) {
    // The ratio blows up to +inf at the open end; move towards it until the
    // sign is right. Only needed for very large rho.
    const double pole = lo;
    double off = std::min(std::max(1e-12, 1e-9 * kPi / n), 0.25 * (hi - pole));
    int tries = 0;
    while (!(g(pole + off) > 0.0)) {
      off *= 1.0 / 16.0;
      if (++tries > 40 || pole + off <= pole)
        throw BracketFailure("no sign change next to the pole for k = " + std::to_string(k));
    }
    lo = pole + off;
  }
  MuRoot r;
  r.k = k;
  r.kind = RootKind::Trigonometric;
  r.lo = lo;
  r.hi = hi;
  r.value = bracket_root(g, lo, hi, tol);
  const double num = use_c ? num_c(n, rho, r.value) : num_s(n, rho, r.value);
  const double den = use_c ? den_c(n, r.value) : den_s(n, r.value);
  r.residual = (r.value == 0.0 && !use_c) ? std::abs(double(n + 1) / (n - 1) - rho)
                                          : ratio_residual(num, den);
  return r;
}

MuRoot hyp_root(int n, double rho, int k, bool use_c, double tol) {
  auto g = [&](double x) {
    return -(use_c ? num_ch(n, rho, x) : num_sh(n, rho, x));
  };
  double x_hi = std::max(1.0, std::log(rho) + 1.0);
  int tries = 0;
  while (g(x_hi) > 0.0) {
    x_hi *= 2.0;
    if (++tries > 60) throw BracketFailure("hyperbolic bracket did not close");
  }
  MuRoot r;
  r.k = k;
  r.kind = RootKind::Hyperbolic;
  r.lo = 0.0;
  r.hi = x_hi;
  r.value = bracket_root(g, 0.0, x_hi, tol);
  const double f = use_c ? hyp_c(n, r.value) : hyp_s(n, r.value);
  r.residual = std::abs(f - rho);
  return r;
}

struct LambdaEval {
  double lambda;
  double log_abs;
  double cross;  // |l14 - l15| / allowance; <= 1 passes
};

LambdaEval evaluate_lambda(int n, double rho, const MuRoot& root) {
  const double sign = (root.k % 2 == 0) ? 1.0 : -1.0;
  const double x = root.value;
  if (x == 0.0) {
    // mu = 0 limit of (-1)^k sin(n mu)/sin(mu).
    return {sign * n, std::log(double(n)), 0.0};
  }
  if (root.kind == RootKind::Trigonometric) {
    const double mu = x;
    const double sh = std::sin(0.5 * mu);
    const double den = (1.0 - rho) * (1.0 - rho) + 4.0 * rho * sh * sh;
    const double sm = std::sin(mu);
    const double l15 = sign * std::sin(n * mu) / sm;
    if (den == 0.0) return {l15, std::log(std::abs(l15)), 0.0};
    const double l14 = (1.0 - rho * rho) / den;
    const double allow = 1e-9 * std::abs(l14) +
                         64.0 * kEps * (2.0 * n * std::abs(mu) + 1.0) / std::abs(sm) +
                         16.0 * kEps * std::abs(mu) * n / std::abs(sm);
    return {l14, std::log(std::abs(l14)), std::abs(l14 - l15) / allow};
  }
  // mu = i x: sinh(n x)/sinh(x) = e^{(n-1)x} (1 - e^{-2nx}) / (1 - e^{-2x}).
  const double q = std::expm1(-2.0 * n * x) / std::expm1(-2.0 * x);
  const double log_abs = (n - 1) * x + std::log(q);
  if (log_abs >= std::log(DBL_MAX)) return {sign * HUGE_VAL, log_abs, 0.0};
  const double mag = std::exp((n - 1) * x) * q;
  const double l15 = sign * mag;
  const double ch = std::cosh(x);
  const double den = 1.0 + rho * rho - 2.0 * rho * ch;
  // Once den is within its own rounding error the closed form says nothing.
  const double den_err = 16.0 * kEps * (1.0 + rho * rho + 2.0 * rho * ch) +
                         32.0 * kEps * x * 2.0 * rho * std::sinh(x);
  if (std::abs(den) <= den_err) return {l15, log_abs, 0.0};
  const double l14 = (1.0 - rho * rho) / den;
  const double cond = mag * mag * (1.0 + rho * rho + 2.0 * rho * ch) / std::abs(1.0 - rho * rho);
  const double root_err = 16.0 * kEps * x *
                          (n * mag + mag * mag * 2.0 * rho * std::sinh(x) / std::abs(1.0 - rho * rho));
  const double allow = 1e-9 * mag + 64.0 * kEps * cond + root_err;
  return {l15, log_abs, std::abs(l14 - l15) / allow};
}

void normalize_vector(std::vector<double>& y) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  if (m == 0.0) return;
  for (double& v : y) v /= m;
  for (double v : y) {
    if (std::abs(v) > 1e-12) {
      if (v < 0.0)
        for (double& w : y) w = -w;
      break;
    }
  }
}

// Neumaier-compensated sum.
struct CompensatedSum {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) c += (sum - t) + v;
    else c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

SpectrumResult compute_spectrum(const KmsParams& p, const SpectrumOptions& opt, bool parallel) {
  if (!p.is_real()) throw InvalidParameter("real_spectrum needs real rho");
  const int n = p.n;
  const double rho = p.rho.real();
  const double r = std::abs(rho);
  const bool negated = rho < 0.0;

  SpectrumResult res{p, std::vector<EigenPair>(n), {}};
  std::vector<std::exception_ptr> errors(n);
  std::vector<double> cross(n, 0.0), resid(n, 0.0);

  const double mag_limit = std::log(DBL_MAX);
  const bool can_multiply = r <= 1.0 || (n - 1) * std::log(r) < mag_limit - 2.0;
  const double knorm = (opt.vectors && can_multiply) ? kms_inf_norm(p) : 0.0;

#if defined(KMS_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
#endif
  for (int k = 0; k < n; ++k) {
    try {
      EigenPair& e = res.pairs[k];
      e.k = k;
      e.mu = solve_mu(n, r, k, opt.tol);
      const LambdaEval le = evaluate_lambda(n, r, e.mu);
      e.lambda = le.lambda;
      e.log_abs_lambda = le.log_abs;
      cross[k] = le.cross;
      e.klass = (e.mu.kind == RootKind::Hyperbolic && e.mu.value > 0.0) ? EigenClass::Extraordinary
                                                                         : EigenClass::Ordinary;
      // Odd k: skew-symmetric vector. J_n flips the symmetry when n is even.
      const bool odd = (k % 2 == 1) != (negated && n % 2 == 0);
      e.zero_type = odd ? ZeroType::Type1 : ZeroType::Type2;
      if (opt.vectors) {
        e.vector = eigenvector_from_mu(n, e.mu);
        if (negated) apply_signature(std::span<double>(e.vector));
        if (can_multiply && std::isfinite(e.lambda))
          resid[k] = eigen_residual(n, rho, e.lambda, e.vector) / knorm;
      }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& ex : errors)
    if (ex) std::rethrow_exception(ex);

  SpectrumDiagnostics& d = res.diagnostics;
  for (int k = 0; k < n; ++k) {
    const EigenPair& e = res.pairs[k];
    if (cross[k] > 1.0)
      throw ConsistencyError("eigenvalue formulas disagree at k = " + std::to_string(k));
    d.max_cross_check = std::max(d.max_cross_check, cross[k]);
    d.max_residual = std::max(d.max_residual, resid[k]);
    if (e.klass == EigenClass::Extraordinary) ++d.extraordinary_count;
    if (!std::isfinite(e.lambda)) d.overflow = true;
  }
  if (opt.vectors && !can_multiply) d.notes.push_back("residual-skipped: entries overflow");

  if (d.overflow) {
    d.notes.push_back("overflow: some |lambda| exceeds the double range");
    d.notes.push_back("trace-check-skipped");
  } else {
    CompensatedSum s, a;
    for (const EigenPair& e : res.pairs) {
      s.add(e.lambda);
      a.add(std::abs(e.lambda));
    }
    d.trace_error = std::abs(s.value() - n) / std::max(double(n), a.value());
  }

  const double base = 1.0 - rho * rho;
  if (base == 0.0) {
    double m = HUGE_VAL;
    for (const EigenPair& e : res.pairs) m = std::min(m, std::abs(e.lambda));
    d.determinant_error = m;
  } else {
    CompensatedSum logs;
    int negatives = 0;
    bool zero = false;
    for (const EigenPair& e : res.pairs) {
      if (e.lambda == 0.0) zero = true;
      if (e.lambda < 0.0) ++negatives;
      logs.add(e.log_abs_lambda);
    }
    const double target = (n - 1) * std::log(std::abs(base));
    const bool target_negative = base < 0.0 && (n - 1) % 2 == 1;
    if (zero) {
      d.determinant_error = 1.0;
    } else if ((negatives % 2 == 1) != target_negative) {
      d.determinant_error = 2.0;
      d.notes.push_back("determinant sign mismatch");
    } else {
      d.determinant_error = std::abs(std::expm1(logs.value() - target));
    }
  }
  return res;
}

}  // namespace

const char* to_string(RootKind k) {
  return k == RootKind::Trigonometric ? "trigonometric" : "hyperbolic";
}

const char* to_string(EigenClass c) {
  return c == EigenClass::Ordinary ? "ordinary" : "extraordinary";
}

GridPoints GridPoints::make(int n) {
  if (n < 2) throw InvalidParameter("grid needs n >= 2");
  GridPoints g;
  g.alpha.resize(n);
  g.beta.resize(n);
  g.gamma.resize(n);
  for (int k = 0; k < n; ++k) {
    g.alpha[k] = (k - 1) * kPi / (n - 1);
    g.beta[k] = k * kPi / n;
    g.gamma[k] = (k + 1) * kPi / (n + 1);
  }
  return g;
}

double trig_c(int n, double mu) {
  const double den = den_c(n, mu);
  if (std::abs(den) <= 1e-14) throw PoleError("trig_c denominator vanishes");
  return std::cos(0.5 * (n + 1) * mu) / den;
}

double trig_s(int n, double mu) {
  const double den = den_s(n, mu);
  if (std::abs(den) <= 1e-14) {
    if (std::abs(mu) <= 1e-13) return double(n + 1) / (n - 1);
    throw PoleError("trig_s denominator vanishes");
  }
  return std::sin(0.5 * (n + 1) * mu) / den;
}

double hyp_c(int n, double x) {
  x = std::abs(x);
  return std::exp(x) * (1.0 + std::exp(-(n + 1) * x)) / (1.0 + std::exp(-(n - 1) * x));
}

double hyp_s(int n, double x) {
  x = std::abs(x);
  if (x == 0.0) return double(n + 1) / (n - 1);
  return std::exp(x) * std::expm1(-(n + 1) * x) / std::expm1(-(n - 1) * x);
}

MuRoot solve_mu(int n, double rho, int k, double tol) {
  if (n < 2) throw InvalidParameter("n must be >= 2");
  if (k < 0 || k >= n) throw InvalidParameter("k out of range");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidParameter("solve_mu needs finite rho >= 0");
  if (!(tol > 0.0)) throw InvalidParameter("tol must be positive");

  const double alpha = (k - 1) * kPi / (n - 1);
  const double beta = k * kPi / n;
  const double gamma = (k + 1) * kPi / (n + 1);
  const bool use_c = (k % 2 == 0);

  auto exact = [&](double value, double lo, double hi) {
    MuRoot r;
    r.k = k;
    r.value = value;
    r.lo = lo;
    r.hi = hi;
    return r;
  };

  if (rho == 0.0) return exact(gamma, beta, gamma);
  if (near_one(rho)) return exact(beta, beta, gamma);
  if (k == 1 && near_xi(n, rho)) return exact(0.0, 0.0, beta);

  if (k == 0) {
    if (rho > 1.0) return hyp_root(n, rho, 0, true, tol);
    return trig_root(n, rho, 0, true, 0.0, gamma, tol, false);
  }
  if (k == 1) {
    const double xi = double(n + 1) / (n - 1);
    if (rho > xi) return hyp_root(n, rho, 1, false, tol);
    if (rho > 1.0) return trig_root(n, rho, 1, false, 0.0, beta, tol, false);
    return trig_root(n, rho, 1, false, beta, gamma, tol, false);
  }
  if (rho > 1.0) return trig_root(n, rho, k, use_c, alpha, beta, tol, true);
  return trig_root(n, rho, k, use_c, beta, gamma, tol, false);
}

double lambda_from_mu(int n, double rho, const MuRoot& root) {
  const LambdaEval le = evaluate_lambda(n, rho, root);
  if (le.cross > 1.0)
    throw ConsistencyError("eigenvalue formulas disagree at k = " + std::to_string(root.k));
  return le.lambda;
}

std::vector<double> eigenvector_from_mu(int n, const MuRoot& root) {
  std::vector<double> y(n);
  const bool odd = root.k % 2 == 1;
  const double h = 0.5 * (n - 1);
  const double x = root.value;
  for (int j = 0; j < n; ++j) {
    const double t = j - h;
    if (x == 0.0) {
      y[j] = odd ? t : 1.0;
    } else if (root.kind == RootKind::Trigonometric) {
      y[j] = odd ? std::sin(x * t) : std::cos(x * t);
    } else {
      // sinh/cosh(x t) scaled by e^{-x h}; both exponents are <= 0.
      const double a = std::exp(x * (j - (n - 1)));
      const double b = std::exp(-x * j);
      y[j] = odd ? 0.5 * (a - b) : 0.5 * (a + b);
    }
  }
  normalize_vector(y);
  return y;
}

SpectrumResult real_spectrum(const KmsParams& p, const SpectrumOptions& opt) {
  return compute_spectrum(p, opt, opt.parallel);
}

SpectrumResult real_spectrum_serial(const KmsParams& p, SpectrumOptions opt) {
  opt.parallel = false;
  return compute_spectrum(p, opt, false);
}

EigenClass classify_eigenvalue(int n, double rho, double lambda) {
  (void)n;
  return symbol_range(rho).contains(lambda) ? EigenClass::Ordinary : EigenClass::Extraordinary;
}

}  // namespace kms
