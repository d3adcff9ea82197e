#include "kms/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "kms/chebpoly.hpp"
#include "kms/classify.hpp"
#include "kms/complexspectrum.hpp"
#include "kms/oracle.hpp"
#include "kms/polyroots.hpp"
#include "kms/realspectrum.hpp"

namespace kms {
namespace {

struct Context {
  VerifyOptions opt;
  int fault_index = -1;
  double fault_size = 0.0;

  bool full() const { return opt.level == VerifyLevel::Full; }

  // p_2n as consumed by the checks; optionally with one perturbed coefficient.
  Polynomial p2n(int n, Complex rho) const {
    Polynomial p = poly_p2n(n, rho);
    if (!opt.inject_fault) return p;
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    c[std::size_t(fault_index) % c.size()] += fault_size;
    return Polynomial(std::move(c));
  }
};

std::vector<double> real_rho_grid(int n) {
  return {0.0, 0.1, 0.5, 0.9, 0.99, 1.0, 1.01, double(n + 1) / (n - 1), 1.5, 2.0, 3.0, -0.7, -2.0};
}

const std::vector<Complex>& complex_rho_grid() {
  static const std::vector<Complex> g = {
      {0.0, 0.5}, {0.3, 0.8}, {1.5, 0.5}, {-1.0, 2.0}, {0.0, 2.0 * std::sqrt(2.0)}};
  return g;
}

// Records a check from a worst-case value; exceptions count as failures.
template <class F>
void run_check(VerifyReport& rep, const std::string& name, double bound, F&& body) {
  VerifyCheck c;
  c.name = name;
  c.bound = bound;
  try {
    c.worst = body(c.detail);
    c.passed = c.worst <= bound;
  } catch (const std::exception& e) {
    c.worst = HUGE_VAL;
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  rep.checks.push_back(std::move(c));
}

std::string where(int n, Complex rho) {
  std::ostringstream os;
  os << "n=" << n << " rho=" << rho.real() << (rho.imag() < 0 ? "" : "+") << rho.imag() << "i";
  return os.str();
}

void track(double v, double& worst, std::string& detail, int n, Complex rho) {
  if (v > worst || std::isnan(v)) {
    worst = std::isnan(v) ? HUGE_VAL : v;
    detail = where(n, rho);
  }
}

std::vector<Complex> structured_eigs(const KmsParams& p) {
  std::vector<Complex> out;
  if (p.is_real()) {
    SpectrumOptions o;
    o.vectors = false;
    for (const EigenPair& e : real_spectrum(p, o).pairs) out.emplace_back(e.lambda, 0.0);
  } else {
    for (const ComplexEigenPair& e : complex_spectrum(p, false).pairs) out.push_back(e.lambda);
  }
  return out;
}

// Relative error against max(|lambda|, 1e-10 ||K||); the floor only matters for
// eigenvalues that are exactly zero (rho = +-1).
double oracle_gap(const KmsParams& p) {
  const double floor = 1e-10 * kms_inf_norm(p);
  return matched_relative_error(structured_eigs(p), oracle_eig_kms(p).eigenvalues, floor);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

double matched_relative_error(const std::vector<Complex>& a, const std::vector<Complex>& b,
                              double floor) {
  if (a.size() != b.size()) return HUGE_VAL;
  struct Cand {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cands.push_back({std::abs(a[i] - b[j]), i, j});
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    return x.d < y.d || (x.d == y.d && (x.i < y.i || (x.i == y.i && x.j < y.j)));
  });
  std::vector<char> ua(a.size(), 0), ub(b.size(), 0);
  double worst = 0.0;
  for (const Cand& c : cands) {
    if (ua[c.i] || ub[c.j]) continue;
    ua[c.i] = ub[c.j] = 1;
    const double r = c.d / std::max(std::abs(b[c.j]), floor);
    worst = std::max(worst, std::isnan(r) ? HUGE_VAL : r);
  }
  return worst;
}

VerifyReport run_verify(const VerifyOptions& opt) {
  Context ctx{opt};
  if (opt.inject_fault) {
    std::mt19937_64 rng(opt.seed);
    ctx.fault_index = int(rng() % 1024);
    ctx.fault_size = 1e-3 * (1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }
  VerifyReport rep;
  const int n_real = ctx.full() ? 12 : 6;
  const int n_complex = ctx.full() ? 10 : 6;

  run_check(rep, "inverse_tridiagonal", 1e-12, [&](std::string& d) {
    double w = 0.0;
    for (int n : {2, 3, 5, 8})
      for (Complex rho : {Complex(0.5), Complex(-2.0), Complex(0.3, 0.8)}) {
        const KmsParams p(n, rho);
        const DenseMatrix prod = build_kms(p) * kms_inverse(p);
        const double scale = kms_inf_norm(p) * kms_inverse(p).inf_norm();
        track(prod.max_abs_diff(DenseMatrix::identity(n)) / scale, w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "determinant_closed_form", 1e-10, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= 8; ++n)
      for (Complex rho : {Complex(0.5), Complex(-2.0), Complex(0.3, 0.8), Complex(1.5, 0.5)}) {
        const KmsParams p(n, rho);
        const Complex ex = oracle_lu_determinant(build_kms(p));
        track(std::abs(kms_determinant(p) - ex) / std::abs(ex), w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "p2n_product_identity", 1e-13, [&](std::string& d) {
    double w = 0.0;
    const Polynomial z2m1({-1.0, 0.0, 1.0});
    for (int n = 2; n <= 9; ++n)
      for (Complex rho : {Complex(0.4), Complex(-1.7), Complex(0.3, 0.8), Complex(-1.0, 2.0)}) {
        const Polynomial lhs = poly_s(n, rho) * poly_c(n, rho);
        const Polynomial rhs = ctx.p2n(n, rho) * z2m1;
        const Polynomial diff = lhs - rhs;
        track(diff.max_abs_coeff() / lhs.max_abs_coeff(), w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "p2n_roots_to_eigenvalues", 1e-7, [&](std::string& d) {
    double w = 0.0;
    for (int n : {3, 4, 5})
      for (Complex rho : {Complex(0.6), Complex(0.3, 0.8), Complex(1.5, 0.5)}) {
        const KmsParams p(n, rho);
        const std::vector<Complex> roots = find_roots(ctx.p2n(n, rho));
        // Each inverse pair maps to one eigenvalue; keep |z| >= 1 members.
        std::vector<Complex> lam;
        for (const Complex& z : roots) lam.push_back(zero_to_eigenvalue(rho, z));
        const std::vector<Complex> ref = oracle_eig_kms(p).eigenvalues;
        const double floor = 1e-12 * kms_inf_norm(p);
        double worst_here = 0.0;
        for (const Complex& l : lam) {
          double best = HUGE_VAL;
          for (const Complex& r : ref) best = std::min(best, std::abs(l - r) / std::max(std::abs(r), floor));
          worst_here = std::max(worst_here, best);
        }
        track(worst_here, w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "real_oracle_grid", 1e-8, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= n_real; ++n)
      for (double rho : real_rho_grid(n)) track(oracle_gap(KmsParams(n, rho)), w, d, n, rho);
    return w;
  });

  run_check(rep, "complex_oracle_grid", 1e-7, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= n_complex; ++n)
      for (Complex rho : complex_rho_grid()) track(oracle_gap(KmsParams(n, rho)), w, d, n, rho);
    return w;
  });

  run_check(rep, "trace_and_determinant", 1e-9, [&](std::string& d) {
    double w = 0.0;
    for (int n : {2, 5, 17, 64, ctx.full() ? 1000 : 200})
      for (double rho : {0.2, 0.95, 1.3, 2.5, -0.6, -3.0}) {
        SpectrumOptions o;
        o.vectors = false;
        const SpectrumResult r = real_spectrum(KmsParams(n, rho), o);
        track(std::max(r.diagnostics.trace_error, r.diagnostics.determinant_error), w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "eigenpair_residuals", 1e-8, [&](std::string& d) {
    double w = 0.0;
    const int nmax = ctx.full() ? 200 : 60;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rho_dist(-4.0, 4.0);
    for (int n = 2; n <= nmax; n += (n < 16 ? 1 : 23)) {
      for (int s = 0; s < 4; ++s) {
        const double rho = rho_dist(rng);
        const SpectrumResult r = real_spectrum(KmsParams(n, rho));
        track(r.diagnostics.max_residual, w, d, n, rho);
      }
    }
    return w;
  });

  run_check(rep, "inverse_pair_closure", 1e-8, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= 9; ++n)
      for (Complex rho : {Complex(0.5), Complex(-2.5), Complex(0.3, 0.8), Complex(1.5, 0.5)}) {
        const std::vector<Complex> z = find_roots(ctx.p2n(n, rho));
        double here = 0.0;
        for (const Complex& a : z) {
          double best = HUGE_VAL;
          for (const Complex& b : z) best = std::min(best, std::abs(a * b - 1.0));
          here = std::max(here, best);
        }
        track(here, w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "unit_circle_criterion", 0.0, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= 9; ++n)
      for (double rho : {-0.9, -0.3, 0.2, 0.7, 0.99, -3.0, -1.2, 1.05, 1.5, 4.0}) {
        const bool expect = std::abs(rho) < 1.0;
        const bool got = cohn_all_zeros_on_unit_circle(ctx.p2n(n, rho));
        track(expect == got ? 0.0 : 1.0, w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "type_counts", 0.0, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= 11; ++n)
      for (Complex rho : {Complex(0.3, 0.8), Complex(1.5, 0.5), Complex(-0.4), Complex(2.2)}) {
        const SplitZeros s = p2n_zeros_split(KmsParams(n, rho));
        const bool ok = int(s.type1.size()) == 2 * (n / 2) && int(s.type2.size()) == 2 * ((n + 1) / 2);
        track(ok ? 0.0 : 1.0, w, d, n, rho);
      }
    return w;
  });

  run_check(rep, "extraordinary_counts", 0.0, [&](std::string& d) {
    double w = 0.0;
    for (int n = 2; n <= (ctx.full() ? 40 : 12); ++n) {
      const double xi = double(n + 1) / (n - 1);
      for (double rho : {0.0, 0.4, 0.97, 1.0, 0.5 * (1.0 + xi), 1.01 * xi, 3.0, -0.5, -0.5 * (1.0 + xi), -2.0 * xi}) {
        SpectrumOptions o;
        o.vectors = false;
        const SpectrumResult r = real_spectrum(KmsParams(n, rho), o);
        const double a = std::abs(rho);
        const int expect = a <= 1.0 ? 0 : (a <= xi ? 1 : 2);
        bool ok = r.diagnostics.extraordinary_count == expect;
        for (const EigenPair& e : r.pairs) {
          const bool big = std::abs(e.lambda) > n;
          ok = ok && big == (e.klass == EigenClass::Extraordinary) &&
               classify_eigenvalue(n, rho, e.lambda) == e.klass;
        }
        track(ok ? 0.0 : 1.0, w, d, n, rho);
      }
    }
    return w;
  });

  run_check(rep, "class_predicates_bruteforce", 0.0, [&](std::string& d) {
    double w = 0.0;
    const std::vector<Complex> rhos = {-1.5, -1.0, -0.5, 0.0, 0.3, 0.9, 1.0, 1.2, 2.0, Complex(0.0, 0.5), Complex(1.0, 1.0)};
    for (int n = 2; n <= (ctx.full() ? 5 : 3); ++n)
      for (const Complex& rho : rhos)
        for (MatrixClass c : kAllMatrixClasses) {
          if (n > bruteforce_cap(c)) continue;
          const KmsParams p(n, rho);
          if (!verify_class_bruteforce(p, c)) {
            w = 1.0;
            d = where(n, rho) + " " + to_string(c);
          }
        }
    return w;
  });

  run_check(rep, "double_eigenvalue_loci", 1e-5, [&](std::string& d) {
    double w = 0.0;
    const int nmax = ctx.full() ? 8 : 5;
    for (int n = 3; n <= nmax; ++n)
      for (ZeroType t : {ZeroType::Type1, ZeroType::Type2}) {
        if (t == ZeroType::Type1 && n < 4) continue;
        for (const DoubleEigenLocus& l : double_eigen_loci(n, t)) {
          const std::vector<Complex> ev = oracle_eig_kms(KmsParams(n, l.rho)).eigenvalues;
          std::vector<double> dist;
          for (const Complex& e : ev) dist.push_back(std::abs(e + double(n)) / n);
          std::sort(dist.begin(), dist.end());
          // Exactly two eigenvalues at -n: the second closest is near, the third is not.
          const double second = dist.at(1);
          const bool third_far = dist.size() < 3 || dist[2] > 1e-5;
          track(third_far ? second : HUGE_VAL, w, d, n, l.rho);
        }
      }
    return w;
  });

  return rep;
}

std::string format_report(const VerifyReport& r) {
  std::string out;
  char buf[256];
  for (const VerifyCheck& c : r.checks) {
    std::snprintf(buf, sizeof buf, "%s %-28s worst=%.3e bound=%.1e", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.worst, c.bound);
    out += buf;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += '\n';
  }
  out += r.passed() ? "verify: all checks passed\n" : "verify: FAILED\n";
  return out;
}

}  // namespace kms
