// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "kms/approx.hpp"
#include "kms/complexspectrum.hpp"
#include "kms/io.hpp"
#include "kms/oracle.hpp"
#include "kms/realspectrum.hpp"
#include "kms/verify.hpp"
#include "support.hpp"

using kms::Complex;
using kms::KmsParams;

namespace {

constexpr double kFig1Tol = 1e-9;
constexpr double kRealGridTol = 1e-8;
constexpr double kRealGridFloor = 1e-10;  // times ||K||_inf, for zero eigenvalues
constexpr double kComplexGridTol = 1e-7;
constexpr double kLargeEigsTol = 6e-4;
constexpr double kRegulaFalsiSlack = 1.2;
constexpr double kNearOneTol = 3.5e-3;
constexpr double kLocusTol = 1e-5;
constexpr double kResidualTol = 1e-8;
constexpr double kPerfLimitSeconds = 2.0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.ok) o.detail = why;
  o.ok = false;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> real_lambdas(int n, double rho) {
  kms::SpectrumOptions o;
  o.vectors = false;
  std::vector<double> v;
  for (const auto& e : kms::real_spectrum(KmsParams(n, rho), o).pairs) v.push_back(e.lambda);
  return v;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i - 1] < v[i])) return false;
  return true;
}

Outcome fig1() {
  Outcome o;
  const auto rows = kms::sweep(5, 0.0, 1.6, 161);
  auto lam = [&](int i, int k) { return rows[5 * i + k].lambda_re; };
  double worst = 0.0;
  if (std::abs(rows[5 * 150].rho_re - 1.5) > 1e-15) fail(o, "sample 150 is not rho = 1.5");
  worst = std::max(worst, std::abs(lam(150, 1) + 5.0));
  worst = std::max(worst, std::abs(lam(100, 0) - 5.0));
  for (int k = 1; k < 5; ++k) worst = std::max(worst, std::abs(lam(100, k)));
  if (worst > kFig1Tol) fail(o, "closed-form values off by " + num(worst));
  for (int k = 0; k < 5; ++k)
    if (lam(0, k) != 1.0) fail(o, "spectrum at rho = 0 is not exactly 1");

  // 0 < rho < 1: (1-rho)/(1+rho) < lambda_{n-1} < ... < lambda_0 < (1+rho)/(1-rho).
  {
    const double r = 0.5;
    auto l = real_lambdas(5, r);
    std::vector<double> chain = {(1 - r) / (1 + r)};
    for (int k = 4; k >= 0; --k) chain.push_back(l[k]);
    chain.push_back((1 + r) / (1 - r));
    if (!strictly_increasing(chain)) fail(o, "ordering chain at rho = 0.5");
  }
  // 1 < rho < xi_n: -(rho+1)/(rho-1) < lambda_1 < ... < lambda_{n-1} < -(rho-1)/(rho+1) < 0 < n < lambda_0.
  {
    const double r = 1.2;
    auto l = real_lambdas(5, r);
    std::vector<double> chain = {-(r + 1) / (r - 1)};
    for (int k = 1; k < 5; ++k) chain.push_back(l[k]);
    chain.insert(chain.end(), {-(r - 1) / (r + 1), 0.0, 5.0, l[0]});
    if (!strictly_increasing(chain)) fail(o, "ordering chain at rho = 1.2");
    if (!(l[1] >= -5.0)) fail(o, "lambda_1 below -n at rho = 1.2");
  }
  if (o.ok) o.detail = "worst closed-form error " + num(worst);
  return o;
}

Outcome oracle_grid() {
  Outcome o;
  double worst_real = 0.0, worst_complex = 0.0;
  for (int n = 2; n <= 12; ++n) {
    for (double rho : {0.0, 0.1, 0.5, 0.9, 0.99, 1.0, 1.01, kmstest::xi(n), 1.5, 2.0, 3.0, -0.7, -2.0}) {
      auto got = real_lambdas(n, rho);
      std::sort(got.begin(), got.end());
      std::vector<double> ref;
      for (const Complex& e : kms::oracle_eig_kms(KmsParams(n, rho)).eigenvalues) ref.push_back(e.real());
      std::sort(ref.begin(), ref.end());
      const double floor = kRealGridFloor * kms::kms_inf_norm(KmsParams(n, rho));
      for (int k = 0; k < n; ++k) {
        const double e = std::abs(got[k] - ref[k]) / std::max(std::abs(ref[k]), floor);
        if (e > worst_real) worst_real = e;
      }
    }
  }
  const std::vector<Complex> rhos = {Complex(0.0, 0.5), Complex(0.3, 0.8), Complex(1.5, 0.5), Complex(-1.0, 2.0),
                                     Complex(0.0, 2.0 * std::sqrt(2.0))};
  for (int n = 2; n <= 10; ++n) {
    for (const Complex& rho : rhos) {
      const KmsParams p(n, rho);
      std::vector<Complex> got;
      for (const auto& e : kms::complex_spectrum(p, false).pairs) got.push_back(e.lambda);
      const auto ref = kms::oracle_eig_kms(p).eigenvalues;
      worst_complex = std::max(worst_complex, kms::matched_relative_error(got, ref, kRealGridFloor * kms::kms_inf_norm(p)));
    }
  }
  if (worst_real > kRealGridTol) fail(o, "real grid error " + num(worst_real));
  if (worst_complex > kComplexGridTol) fail(o, "complex grid error " + num(worst_complex));
  if (o.ok) o.detail = "real " + num(worst_real) + ", complex " + num(worst_complex);
  return o;
}

Outcome large_n_forms() {
  Outcome o;
  double w10 = 0.0, w14 = 0.0;
  for (int j = 0; j < 24; ++j) {
    const Complex rho = std::polar(3.0, 2.0 * std::numbers::pi * j / 24.0);
    w10 = std::max(w10, kms::large_eigs_report(10, rho).max_rel_error);
    w14 = std::max(w14, kms::large_eigs_report(14, rho).max_rel_error);
  }
  if (w10 > kLargeEigsTol) fail(o, "n=10 error " + num(w10));
  if (!(w14 < w10)) fail(o, "n=14 error " + num(w14) + " not below n=10");
  if (o.ok) o.detail = "n=10 " + num(w10) + ", n=14 " + num(w14);
  return o;
}

Outcome regula_falsi() {
  Outcome o;
  const int ns[] = {10, 40, 160};
  const struct {
    double rho;
    double quoted[3];
  } cases[] = {{3.0, {0.028, 0.0071, 0.0018}}, {0.3, {0.021, 0.0055, 0.0014}}};
  std::string d;
  for (const auto& c : cases) {
    double prev = HUGE_VAL;
    for (int i = 0; i < 3; ++i) {
      const double e = kms::regula_falsi_report(ns[i], c.rho).max_rel_error;
      d += (d.empty() ? "" : " ") + num(e);
      if (e > kRegulaFalsiSlack * c.quoted[i]) fail(o, "rho=" + num(c.rho) + " n=" + std::to_string(ns[i]) + " error " + num(e));
      if (!(e < prev)) fail(o, "error not decreasing in n at rho=" + num(c.rho));
      prev = e;
    }
  }
  if (o.ok) o.detail = "errors " + d;
  return o;
}

Outcome near_one() {
  Outcome o;
  std::string d;
  for (double rho : {0.98, 1.02}) {
    const auto r = kms::near_one_report(10, rho);
    const double e = std::abs(r.approx_values[0] - r.exact_values[0]) / std::abs(r.exact_values[0]);
    d += (d.empty() ? "" : ", ") + num(e);
    if (e > kNearOneTol) fail(o, "rho=" + num(rho) + " error " + num(e));
  }
  if (o.ok) o.detail = "lambda_0 errors " + d;
  return o;
}

bool in_orbit(const std::vector<kms::DoubleEigenLocus>& loci, Complex target) {
  for (const auto& l : loci)
    for (Complex c : {l.rho, -l.rho, std::conj(l.rho), -std::conj(l.rho)})
      if (std::abs(c - target) <= 1e-9 * std::abs(target)) return true;
  return false;
}

Outcome double_loci() {
  Outcome o;
  if (!in_orbit(kms::double_eigen_loci(3, kms::ZeroType::Type2), Complex(0.0, 2.0 * std::sqrt(2.0))))
    fail(o, "n=3 loci miss 2 sqrt(2) i");
  auto n4 = kms::double_eigen_loci(4, kms::ZeroType::Type1);
  const auto n4b = kms::double_eigen_loci(4, kms::ZeroType::Type2);
  n4.insert(n4.end(), n4b.begin(), n4b.end());
  if (!in_orbit(n4, Complex(-1.0, 2.0))) fail(o, "n=4 loci miss -1+2i");
  int count = 0;
  for (int n = 3; n <= 8; ++n) {
    for (kms::ZeroType t : {kms::ZeroType::Type1, kms::ZeroType::Type2}) {
      if (t == kms::ZeroType::Type1 && n < 4) continue;
      for (const auto& l : kms::double_eigen_loci(n, t)) {
        ++count;
        int close = 0;
        for (const Complex& e : kms::oracle_eig_kms(KmsParams(n, l.rho)).eigenvalues)
          close += std::abs(e + double(n)) <= kLocusTol;
        if (close != 2)
          fail(o, "n=" + std::to_string(n) + " locus has " + std::to_string(close) + " eigenvalues near -n");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(count) + " loci checked";
  return o;
}

Outcome properties() {
  Outcome o;
  // (a) residuals, recomputed here with the O(n) product.
  kmstest::Gen g(20240607);
  double worst = 0.0;
  for (int i = 0; i < 150; ++i) {
    const int n = g.n(2, 200);
    const double rho = g.uniform(-4.0, 4.0);
    const KmsParams p(n, rho);
    const auto r = kms::real_spectrum(p);
    const double knorm = kms::kms_inf_norm(p);
    for (const auto& e : r.pairs) {
      const std::vector<Complex> y(e.vector.begin(), e.vector.end());
      const auto ky = kms::kms_multiply(p, y);
      double res = 0.0, ymax = 0.0;
      for (int j = 0; j < n; ++j) {
        res = std::max(res, std::abs(ky[j] - e.lambda * y[j]));
        ymax = std::max(ymax, std::abs(y[j]));
      }
      worst = std::max(worst, res / (knorm * ymax));
    }
  }
  if (worst > kResidualTol) fail(o, "(a) residual " + num(worst));

  // (b)-(f) from the full self-check suite.
  kms::VerifyOptions vo;
  vo.level = kms::VerifyLevel::Full;
  const auto rep = kms::run_verify(vo);
  const struct {
    const char* tag;
    const char* check;
  } map[] = {{"(b)", "trace_and_determinant"},   {"(b)", "determinant_closed_form"},
             {"(c)", "inverse_pair_closure"},    {"(c)", "unit_circle_criterion"},
             {"(d)", "type_counts"},             {"(e)", "extraordinary_counts"},
             {"(f)", "class_predicates_bruteforce"}};
  for (const auto& m : map) {
    bool seen = false;
    for (const auto& c : rep.checks) {
      if (c.name != m.check) continue;
      seen = true;
      if (!c.passed) fail(o, std::string(m.tag) + " " + c.name + " worst " + num(c.worst));
    }
    if (!seen) fail(o, std::string(m.tag) + " missing check " + m.check);
  }
  if (o.ok) o.detail = "worst residual " + num(worst) + ", suite checks passed";
  return o;
}

Outcome performance() {
  Outcome o;
  kms::SpectrumOptions opt;
  opt.vectors = false;
  opt.parallel = false;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = kms::real_spectrum(KmsParams(100000, 3.0), opt);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.pairs.size() != 100000u) fail(o, "wrong number of eigenvalues");
  if (r.diagnostics.trace_error > 1e-9) fail(o, "trace error " + num(r.diagnostics.trace_error));
  if (s >= kPerfLimitSeconds) fail(o, "took " + num(s) + " s");
  if (o.ok) o.detail = "n=1e5 serial solve " + num(s) + " s";
  return o;
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_s;
  } criteria[] = {
      {1, "sweep at n=5 over [0, 1.6]", fig1, 1.0},
      {2, "oracle equivalence grid", oracle_grid, 30.0},
      {3, "large-n extraordinary forms", large_n_forms, 5.0},
      {4, "regula falsi error decay", regula_falsi, 10.0},
      {5, "near-one Perron root", near_one, 5.0},
      {6, "double eigenvalue loci", double_loci, 10.0},
      {7, "structural property suites", properties, 120.0},
      {8, "performance n=1e5", performance, 2.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s >= c.limit_s) {
      o.ok = false;
      o.detail += "; over time limit " + num(c.limit_s) + " s";
    }
    failed += !o.ok;
    std::printf("%s criterion %d: %s (%.3f s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, s, o.detail.c_str());
  }
  std::printf("%s\n", failed == 0 ? "acceptance: all criteria passed" : "acceptance: FAILED");
  return failed == 0 ? 0 : 1;
}
