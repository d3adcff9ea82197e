#pragma once

#include <string>
#include <vector>

#include "kms/chebpoly.hpp"
#include "kms/matrix.hpp"

namespace kms {

struct ComplexEigenPair {
  Complex lambda;
  /// Member of the inverse pair with |z| >= 1 (Im z >= 0 on the unit circle).
  Complex z;
  /// -i log z on the principal branch, Re mu in (-pi, pi].
  Complex mu;
  std::vector<Complex> vector;  // max |y_j| = 1, that entry equal to 1
  ZeroType zero_type = ZeroType::Type2;
};

struct ComplexSpectrumResult {
  KmsParams params;
  /// Descending |lambda|, ties by arg(lambda).
  std::vector<ComplexEigenPair> pairs;
  double max_residual = 0.0;  // relative to ||K||_inf; 0 without vectors
  double trace_error = 0.0;
  /// Set when real rho in {0, +-1, +-xi_n} was handed to real_spectrum.
  bool delegated = false;
  std::vector<std::string> notes;
};

/// Zeros of p_2n split by factor: type1 from s_{n+1}, type2 from c_{n+1},
/// with the trivial factors z - 1, z + 1 removed first.
struct SplitZeros {
  std::vector<Complex> type1;
  std::vector<Complex> type2;
};

/// Throws InvalidParameter for rho in {0, +-1, +-xi_n}.
SplitZeros p2n_zeros_split(const KmsParams& p);
std::vector<Complex> p2n_zeros(const KmsParams& p);

ComplexSpectrumResult complex_spectrum(const KmsParams& p, bool vectors = true);

struct DoubleEigenLocus {
  int n = 0;
  ZeroType type_tag = ZeroType::Type2;
  Complex t0;
  Complex rho;
  /// |psi_n(rho, -n)| and |psi_n'(rho, -n)| relative to the magnitude of
  /// the terms in their recurrences.
  double psi_residual = 0.0;
  double dpsi_residual = 0.0;
};

/// q_1 (type 1) or q_2 (type 2) as a polynomial in t.
Polynomial double_locus_poly(int n, ZeroType type);

/// Parameter values with a double eigenvalue -n of the given type, one per
/// zero of the locus polynomial. Throws VerificationFailure if any candidate
/// fails the psi / psi' check at 1e-7.
std::vector<DoubleEigenLocus> double_eigen_loci(int n, ZeroType type);

/// min over theta of |lambda - sigma(rho, theta)| on a 4096-point grid with
/// golden-section refinement around the best sample.
double distance_to_symbol_range(const KmsParams& p, Complex lambda);

}  // namespace kms
