#pragma once

// Case generators and comparison helpers shared by the test executables.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

#include "kms/error.hpp"

namespace kmstest {

using kms::Complex;

inline constexpr double kPi = std::numbers::pi;

inline double xi(int n) { return double(n + 1) / double(n - 1); }

/// Distance from real rho to the parameter values where the structure
/// degenerates: 0, +-1 and +-xi_n.
inline double degeneracy_gap(int n, Complex rho) {
  double d = HUGE_VAL;
  for (double s : {0.0, 1.0, -1.0, xi(n), -xi(n)}) d = std::min(d, std::abs(rho - s));
  return d;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int n(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Real rho in [lo, hi], at least `gap` away from 0, +-1, +-xi_n.
  double rho_real(int n, double lo, double hi, double gap = 0.02) {
    for (;;) {
      const double r = uniform(lo, hi);
      if (degeneracy_gap(n, r) >= gap) return r;
    }
  }

  /// Complex rho with |rho| <= max_abs and a nonzero imaginary part, at least
  /// `gap` away from the degenerate real values.
  Complex rho_complex(int n, double max_abs, double gap = 0.05) {
    for (;;) {
      const Complex r(uniform(-max_abs, max_abs), uniform(-max_abs, max_abs));
      if (std::abs(r) <= max_abs && std::abs(r.imag()) > 1e-3 && degeneracy_gap(n, r) >= gap) return r;
    }
  }

  Complex point_in_annulus(double r_lo, double r_hi) {
    const double r = uniform(r_lo, r_hi);
    const double t = uniform(-std::numbers::pi, std::numbers::pi);
    return std::polar(r, t);
  }

 private:
  std::mt19937_64 rng_;
};

/// Greedy nearest-first matching of two multisets; returns the largest
/// pairwise gap measured as min(|a-b| / (rel |b|), |a-b| / abs_tol), so a
/// value <= 1 means every pair meets either the relative or the absolute
/// tolerance.
inline double matched_gap(const std::vector<Complex>& a, const std::vector<Complex>& b, double rel,
                          double abs_tol) {
  if (a.size() != b.size()) return HUGE_VAL;
  struct Cand {
    double d;
    std::size_t i, j;
  };
  std::vector<Cand> c;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c.push_back({std::abs(a[i] - b[j]), i, j});
  std::stable_sort(c.begin(), c.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
  std::vector<char> ua(a.size()), ub(b.size());
  double worst = 0.0;
  for (const Cand& x : c) {
    if (ua[x.i] || ub[x.j]) continue;
    ua[x.i] = ub[x.j] = 1;
    const double g = x.d == 0.0 ? 0.0 : std::min(x.d / (rel * std::abs(b[x.j])), x.d / abs_tol);
    worst = std::max(worst, std::isnan(g) ? HUGE_VAL : g);
  }
  return worst;
}

inline std::vector<Complex> as_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

}  // namespace kmstest
