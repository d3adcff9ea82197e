#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kms/error.hpp"

namespace kms {

enum class VerifyLevel { Quick, Full };

struct VerifyCheck {
  std::string name;
  bool passed = false;
  /// Worst observed value and the bound it was held to.
  double worst = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  /// Perturbs one coefficient of p_2n, chosen from `seed`, in every check
  /// that consumes p_2n.
  bool inject_fault = false;
  std::uint64_t seed = 1;
};

VerifyReport run_verify(const VerifyOptions& opt);

/// One "PASS|FAIL name worst <= bound detail" line per check.
std::string format_report(const VerifyReport& r);

/// Largest |a_i - b_pi(i)| / max(|b_pi(i)|, floor) over a greedy
/// nearest-first matching of two equally sized multisets.
double matched_relative_error(const std::vector<Complex>& a, const std::vector<Complex>& b,
                              double floor);

}  // namespace kms
