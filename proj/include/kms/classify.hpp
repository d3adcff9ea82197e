#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kms/matrix.hpp"

namespace kms {

enum class MatrixClass {
  Positive,
  RealSymmetric,
  Hermitian,
  BoundedSymbol,
  PositiveDefinite,
  PositiveSemidefinite,
  Normal,
  Greens,
  TotallyPositive,
  Oscillatory,
};

inline constexpr std::array<MatrixClass, 10> kAllMatrixClasses = {
    MatrixClass::Positive,         MatrixClass::RealSymmetric,
    MatrixClass::Hermitian,        MatrixClass::BoundedSymbol,
    MatrixClass::PositiveDefinite, MatrixClass::PositiveSemidefinite,
    MatrixClass::Normal,           MatrixClass::Greens,
    MatrixClass::TotallyPositive,  MatrixClass::Oscillatory,
};

const char* to_string(MatrixClass c);
std::optional<MatrixClass> parse_matrix_class(std::string_view name);

struct MatrixClassReport {
  bool positive = false;
  bool real_symmetric = false;
  bool hermitian = false;
  bool bounded_symbol = false;
  bool positive_definite = false;
  bool positive_semidefinite = false;
  bool normal = false;
  bool greens = false;
  bool totally_positive = false;
  bool oscillatory = false;

  bool get(MatrixClass c) const;
};

/// Class membership from the closed-form conditions on (rho, n).
MatrixClassReport classify_params(const KmsParams& p);

/// alpha_j = rho^{-j}, beta_j = rho^j for j = 1..n, so that
/// K_jk = alpha_min(j,k) beta_max(j,k). Throws InvalidParameter unless rho is
/// real and nonzero.
std::pair<std::vector<double>, std::vector<double>> greens_factors(const KmsParams& p);

/// Largest n accepted by the brute-force check of a class.
int bruteforce_cap(MatrixClass c);

/// Membership recomputed from the definition on the dense matrix.
/// Throws SizeLimitError above bruteforce_cap(c).
bool bruteforce_flag(const KmsParams& p, MatrixClass c);

/// bruteforce_flag(p, c) == classify_params(p).get(c).
bool verify_class_bruteforce(const KmsParams& p, MatrixClass c);

}  // namespace kms
