#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "kms/matrix.hpp"
#include "kms/oracle.hpp"
#include "kms/realspectrum.hpp"
#include "support.hpp"

using kms::EigenClass;
using kms::KmsParams;
using kms::RootKind;
using kms::SpectrumResult;
using kms::ZeroType;
using kmstest::kPi;

namespace {

SpectrumResult spectrum(int n, double rho, bool vectors = true) {
  kms::SpectrumOptions o;
  o.vectors = vectors;
  return kms::real_spectrum(KmsParams(n, rho), o);
}

std::vector<double> lambdas(const SpectrumResult& r) {
  std::vector<double> v;
  for (const auto& e : r.pairs) v.push_back(e.lambda);
  return v;
}

}  // namespace

TEST_CASE("grid points interleave") {
  for (int n = 2; n <= 20; ++n) {
    const auto g = kms::GridPoints::make(n);
    CHECK(g.beta[0] == 0.0);
    for (int k = 0; k < n; ++k) {
      CHECK(g.beta[k] < g.gamma[k]);
      if (k + 1 < n) CHECK(g.gamma[k] < g.beta[k + 1]);
      CHECK(g.gamma[k] < kPi);
    }
    for (int k = 1; k + 1 < n; ++k) {
      CHECK(g.alpha[k] < g.beta[k]);
      CHECK(g.beta[k] < g.alpha[k + 1]);
    }
    CHECK(g.alpha[1] == 0.0);
  }
}

TEST_CASE("ratio functions at special points") {
  CHECK(std::abs(kms::trig_s(5, 1e-8) - 1.5) < 1e-6);
  CHECK(kms::trig_s(5, 0.0) == doctest::Approx(1.5));
  CHECK(std::abs(kms::trig_c(6, 2.0 * kPi / 6.0) - 1.0) < 1e-12);
  const double r = kms::hyp_s(5, 10.0) / std::exp(10.0);
  CHECK(r >= 0.999);
  CHECK(r <= 1.001);
  CHECK(std::isfinite(kms::hyp_c(50, 600.0)));
  CHECK(kms::hyp_c(50, 600.0) == doctest::Approx(std::exp(600.0)).epsilon(1e-12));
  CHECK_THROWS_AS(kms::trig_c(5, kPi / 4.0), kms::PoleError);
}

TEST_CASE("property: ratio functions reach their grid values") {
  for (int n = 3; n <= 15; ++n) {
    const auto g = kms::GridPoints::make(n);
    for (int k = 0; k < n; ++k) {
      if (k % 2 == 0) {
        CHECK(std::abs(kms::trig_c(n, g.beta[k]) - 1.0) < 1e-11);
        CHECK(std::abs(kms::trig_c(n, g.gamma[k])) < 1e-11);
      } else {
        CHECK(std::abs(kms::trig_s(n, g.beta[k]) - 1.0) < 1e-11);
        CHECK(std::abs(kms::trig_s(n, g.gamma[k])) < 1e-11);
      }
    }
  }
}

TEST_CASE("roots at the closed-form parameter values") {
  const auto g = kms::GridPoints::make(5);
  for (int k = 0; k < 5; ++k) {
    CHECK(kms::solve_mu(5, 0.0, k).value == g.gamma[k]);
    CHECK(kms::solve_mu(5, 1.0, k).value == g.beta[k]);
  }
  CHECK(kms::solve_mu(5, 1.5, 1).value == 0.0);
}

TEST_CASE("eigenvalues from roots") {
  CHECK(kms::lambda_from_mu(2, 0.5, kms::solve_mu(2, 0.5, 0)) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(kms::lambda_from_mu(5, 1.0, kms::solve_mu(5, 1.0, 0)) == 5.0);
  CHECK(kms::lambda_from_mu(5, 1.5, kms::solve_mu(5, 1.5, 1)) == -5.0);
}

TEST_CASE("eigenvectors at closed-form points") {
  const auto y = kms::eigenvector_from_mu(5, kms::solve_mu(5, 1.5, 1));
  const std::vector<double> expect = {-1.0, -0.5, 0.0, 0.5, 1.0};
  // Normalization fixes the sign of the first nonzero entry, so compare up to sign.
  const double s = y[0] > 0 ? -1.0 : 1.0;
  for (int j = 0; j < 5; ++j) CHECK(std::abs(s * y[j] - expect[j]) < 1e-12);

  for (int n : {2, 7, 30}) {
    const auto ones = kms::eigenvector_from_mu(n, kms::solve_mu(n, 1.0, 0));
    for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  }

  const SpectrumResult r = spectrum(6, 0.5);
  const auto& v = r.pairs[3].vector;
  for (int j = 0; j < 6; ++j) CHECK(std::abs(v[j] + v[5 - j]) < 1e-14);
  CHECK(kms::eigen_residual(6, 0.5, r.pairs[3].lambda, v) <= 1e-10);
}

TEST_CASE("whole spectra at closed-form points") {
  for (const auto& e : spectrum(5, 0.0).pairs) CHECK(e.lambda == 1.0);
  const auto at_one = lambdas(spectrum(5, 1.0));
  CHECK(at_one == std::vector<double>{5, 0, 0, 0, 0});
  const SpectrumResult r = spectrum(2, 4.0);
  CHECK(r.pairs[0].lambda == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(r.pairs[1].lambda == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(r.diagnostics.extraordinary_count == 2);
}

TEST_CASE("eigenvalue classification") {
  const SpectrumResult r = spectrum(5, 1.2, false);
  CHECK(kms::classify_eigenvalue(5, 1.2, r.pairs[0].lambda) == EigenClass::Extraordinary);
  for (int k = 1; k < 5; ++k) CHECK(kms::classify_eigenvalue(5, 1.2, r.pairs[k].lambda) == EigenClass::Ordinary);
  for (const auto& e : spectrum(5, 0.9, false).pairs)
    CHECK(kms::classify_eigenvalue(5, 0.9, e.lambda) == EigenClass::Ordinary);
  CHECK(kms::classify_eigenvalue(2, 4.0, -3.0) == EigenClass::Extraordinary);
}

TEST_CASE("property: oracle equivalence grid") {
  for (int n = 2; n <= 12; ++n) {
    for (double rho : {0.0, 0.1, 0.5, 0.9, 0.99, 1.0, 1.01, kmstest::xi(n), 1.5, 2.0, 3.0, -0.7, -2.0}) {
      const auto got = kmstest::as_complex(lambdas(spectrum(n, rho, false)));
      const auto ref = kms::oracle_eig_kms(KmsParams(n, rho)).eigenvalues;
      INFO("n=" << n << " rho=" << rho);
      CHECK(kmstest::matched_gap(got, ref, 1e-8, 1e-10) <= 1.0);
    }
  }
}

TEST_CASE("property: residuals, trace and determinant over random parameters") {
  kmstest::Gen g(501);
  for (int i = 0; i < 120; ++i) {
    const int n = g.n(2, 200);
    const double rho = g.uniform(-4.0, 4.0);
    const SpectrumResult r = spectrum(n, rho);
    INFO("n=" << n << " rho=" << rho);
    CHECK(r.diagnostics.max_residual <= 1e-8);
    CHECK(r.diagnostics.trace_error <= 1e-10);
    CHECK(r.diagnostics.determinant_error <= 1e-8);
    CHECK(r.diagnostics.max_cross_check <= 1.0);
    // Independent recomputation of the residual with the dense matrix.
    if (n <= 60) {
      const auto a = kms::build_kms(KmsParams(n, rho));
      const double knorm = a.inf_norm();
      for (const auto& e : r.pairs) {
        const std::vector<kms::Complex> y(e.vector.begin(), e.vector.end());
        const auto ay = a.apply(y);
        double res = 0.0;
        for (int j = 0; j < n; ++j) res = std::max(res, std::abs(ay[j] - e.lambda * y[j]));
        CHECK(res <= 1e-8 * knorm);
      }
    }
  }
}

TEST_CASE("property: root residuals and bracket membership") {
  kmstest::Gen g(502);
  for (int i = 0; i < 200; ++i) {
    const int n = g.n(2, 40);
    const double rho = g.uniform(0.0, 4.0);
    const auto grid = kms::GridPoints::make(n);
    for (int k = 0; k < n; ++k) {
      const kms::MuRoot m = kms::solve_mu(n, rho, k);
      INFO("n=" << n << " rho=" << rho << " k=" << k);
      CHECK(m.residual <= 1e-13 * (1.0 + rho) * std::max(1.0, double(n)));
      CHECK(m.lo <= m.value);
      CHECK(m.value <= m.hi);
      if (m.kind == RootKind::Hyperbolic) {
        CHECK(m.value >= 0.0);
        continue;
      }
      CHECK(m.value >= 0.0);
      CHECK(m.value < kPi);
      if (k >= 2) {
        if (rho <= 1.0) {
          CHECK(m.value >= grid.beta[k]);
          CHECK(m.value <= grid.gamma[k]);
        } else {
          CHECK(m.value > grid.alpha[k]);
          CHECK(m.value <= grid.beta[k]);
        }
      }
    }
  }
}

TEST_CASE("property: ordering chains per regime") {
  kmstest::Gen g(503);
  for (int i = 0; i < 200; ++i) {
    const int n = g.n(3, 60);
    const double x = kmstest::xi(n);
    const int regime = i % 3;
    const double rho = regime == 0 ? g.uniform(0.01, 0.99) : regime == 1 ? g.uniform(1.0 + 1e-3, x - 1e-3) : g.uniform(x + 1e-3, 4.0);
    const auto l = lambdas(spectrum(n, rho, false));
    INFO("n=" << n << " rho=" << rho);
    if (regime == 0) {
      CHECK((1 - rho) / (1 + rho) < l[n - 1]);
      for (int k = 0; k + 1 < n; ++k) CHECK(l[k + 1] < l[k]);
      CHECK(l[0] < (1 + rho) / (1 - rho));
      CHECK(l[0] <= n + 1e-12);
    } else {
      const double lo = -(rho + 1) / (rho - 1), hi = -(rho - 1) / (rho + 1);
      if (regime == 1) {
        CHECK(lo < l[1]);
        CHECK(l[1] >= -n - 1e-12);
      } else {
        CHECK(l[1] < -n);
        CHECK(-n < lo);
        CHECK(lo < l[2]);
      }
      for (int k = 1; k + 1 < n; ++k) CHECK(l[k] < l[k + 1]);
      CHECK(l[n - 1] < hi);
      CHECK(hi < 0.0);
      CHECK(n < l[0]);
    }
  }
}

TEST_CASE("ordering at rho = xi_n") {
  for (int n = 3; n <= 30; ++n) {
    const auto l = lambdas(spectrum(n, kmstest::xi(n), false));
    CHECK(l[1] == -n);
    for (int k = 1; k + 1 < n; ++k) CHECK(l[k] < l[k + 1]);
    CHECK(l[n - 1] < -1.0 / n);
    CHECK(l[0] > n);
  }
}

TEST_CASE("property: extraordinary counts and the two membership criteria") {
  kmstest::Gen g(504);
  for (int i = 0; i < 300; ++i) {
    const int n = g.n(2, 80);
    const double rho = g.uniform(-4.0, 4.0);
    const SpectrumResult r = spectrum(n, rho, false);
    const double a = std::abs(rho);
    const int expect = a <= 1.0 ? 0 : (a <= kmstest::xi(n) ? 1 : 2);
    INFO("n=" << n << " rho=" << rho);
    CHECK(r.diagnostics.extraordinary_count == expect);
    for (const auto& e : r.pairs) {
      const bool big = std::abs(e.lambda) > n;
      CHECK(big == (e.klass == EigenClass::Extraordinary));
      CHECK(kms::classify_eigenvalue(n, rho, e.lambda) == e.klass);
    }
  }
}

TEST_CASE("property: continuity across regime boundaries") {
  for (int n : {2, 3, 5, 8, 13}) {
    for (double rho : {0.5, 1.0, kmstest::xi(n), 2.0}) {
      const auto a = lambdas(spectrum(n, rho, false));
      for (double d : {1e-6, -1e-6}) {
        const auto b = lambdas(spectrum(n, rho + d, false));
        for (int k = 0; k < n; ++k) {
          INFO("n=" << n << " rho=" << rho << " d=" << d << " k=" << k);
          // O(sqrt(delta)) is the worst case near rho = 1.
          CHECK(std::abs(a[k] - b[k]) <= 1e-2 * std::max(1.0, std::abs(a[k])));
        }
      }
    }
  }
}

TEST_CASE("property: vector parity follows zero type") {
  kmstest::Gen g(505);
  for (int i = 0; i < 60; ++i) {
    const int n = g.n(2, 50);
    const double rho = g.uniform(-3.5, 3.5);
    const SpectrumResult r = spectrum(n, rho);
    for (const auto& e : r.pairs) {
      const double s = e.zero_type == ZeroType::Type1 ? -1.0 : 1.0;
      double err = 0.0;
      for (int j = 0; j < n; ++j) err = std::max(err, std::abs(e.vector[n - 1 - j] - s * e.vector[j]));
      INFO("n=" << n << " rho=" << rho << " k=" << e.k);
      CHECK(err <= 1e-10);
      if (rho >= 0.0) CHECK((e.zero_type == ZeroType::Type1) == (e.k % 2 == 1));
    }
  }
}

TEST_CASE("property: negative rho mirrors positive rho") {
  kmstest::Gen g(506);
  for (int i = 0; i < 60; ++i) {
    const int n = g.n(2, 60);
    const double rho = g.uniform(0.0, 3.5);
    const auto a = spectrum(n, rho);
    const auto b = spectrum(n, -rho);
    for (int k = 0; k < n; ++k) {
      CHECK(a.pairs[k].lambda == b.pairs[k].lambda);
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(std::abs(a.pairs[k].vector[j]) - std::abs(b.pairs[k].vector[j])) == 0.0);
    }
  }
}

TEST_CASE("serial and parallel paths are bitwise identical") {
  for (int n : {2, 17, 300, 5000}) {
    for (double rho : {0.3, 1.0, 1.7, -2.5}) {
      kms::SpectrumOptions o;
      o.vectors = n <= 300;
      const auto a = kms::real_spectrum(KmsParams(n, rho), o);
      const auto b = kms::real_spectrum_serial(KmsParams(n, rho), o);
      REQUIRE(a.pairs.size() == b.pairs.size());
      for (std::size_t k = 0; k < a.pairs.size(); ++k) {
        CHECK(std::memcmp(&a.pairs[k].lambda, &b.pairs[k].lambda, sizeof(double)) == 0);
        CHECK(std::memcmp(&a.pairs[k].mu.value, &b.pairs[k].mu.value, sizeof(double)) == 0);
        CHECK(a.pairs[k].vector == b.pairs[k].vector);
      }
      CHECK(a.diagnostics.trace_error == b.diagnostics.trace_error);
    }
  }
}

TEST_CASE("overflowing eigenvalues are reported with their logarithm") {
  const SpectrumResult r = spectrum(2000, 5.0, false);
  CHECK(r.diagnostics.overflow);
  CHECK(std::isinf(r.pairs[0].lambda));
  CHECK(r.pairs[0].lambda > 0);
  CHECK(std::isinf(r.pairs[1].lambda));
  CHECK(r.pairs[1].lambda < 0);
  // lambda_0 ~ rho^{n+1}/(rho^2 - 1).
  const double expect = 2001.0 * std::log(5.0) - std::log(24.0);
  CHECK(r.pairs[0].log_abs_lambda == doctest::Approx(expect).epsilon(1e-12));
  CHECK_FALSE(r.diagnostics.notes.empty());
  for (int k = 2; k < 2000; ++k) CHECK(std::isfinite(r.pairs[k].lambda));
}

TEST_CASE("real_spectrum rejects complex rho") {
  CHECK_THROWS_AS(kms::real_spectrum(KmsParams(4, kms::Complex(0.1, 0.2))), kms::InvalidParameter);
}
