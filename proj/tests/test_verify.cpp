#include <doctest.h>

#include "kms/verify.hpp"

TEST_CASE("quick verification passes") {
  const auto r = kms::run_verify({});
  for (const auto& c : r.checks) {
    INFO(c.name << " worst=" << c.worst << " bound=" << c.bound << " " << c.detail);
    CHECK(c.passed);
  }
  CHECK(r.passed());
  CHECK(r.checks.size() >= 10);
  const std::string text = kms::format_report(r);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("verify: all checks passed") != std::string::npos);
}

TEST_CASE("injected faults are caught for every seed") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    kms::VerifyOptions o;
    o.inject_fault = true;
    o.seed = seed;
    const auto r = kms::run_verify(o);
    INFO("seed " << seed);
    CHECK_FALSE(r.passed());
    CHECK(kms::format_report(r).find("verify: FAILED") != std::string::npos);
  }
}

TEST_CASE("matched relative error") {
  using kms::Complex;
  CHECK(kms::matched_relative_error({1.0, 2.0}, {2.0, 1.0}, 1e-10) == 0.0);
  CHECK(kms::matched_relative_error({1.1, 2.0}, {2.0, 1.0}, 1e-10) == doctest::Approx(0.1));
  CHECK(kms::matched_relative_error({1e-12}, {0.0}, 1e-10) == doctest::Approx(1e-2));
}
