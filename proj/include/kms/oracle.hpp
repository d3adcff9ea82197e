#pragma once

#include <vector>

#include "kms/chebpoly.hpp"
#include "kms/matrix.hpp"

namespace kms {

/// Brute-force reference computations. Nothing here uses the secular
/// equations or the production root finder; everything runs in long double.

enum class OracleMethod { SymmetricTridiagonal, GeneralDense };

const char* to_string(OracleMethod m);

struct OracleSpectrum {
  /// Sorted by descending real part, then descending imaginary part.
  std::vector<Complex> eigenvalues;
  OracleMethod method = OracleMethod::GeneralDense;
};

inline constexpr int kOracleGeneralMax = 512;
inline constexpr int kOracleSymmetricMax = 5000;

/// Householder reduction to Hessenberg form followed by shifted complex QR.
/// Throws SizeLimitError above kOracleGeneralMax, ConvergenceError on stall.
OracleSpectrum oracle_eig(const DenseMatrix& a);

/// Spectrum of K_n(rho). Real rho != +-1 goes through Sturm bisection on the
/// Jacobi matrix (1 - rho^2) K^{-1}; everything else through oracle_eig.
OracleSpectrum oracle_eig_kms(const KmsParams& p);

/// Same, forcing the general dense path.
OracleSpectrum oracle_eig_kms_dense(const KmsParams& p);

/// LU with partial pivoting.
Complex oracle_lu_determinant(const DenseMatrix& a);

/// Companion eigenvalues (general dense path) with Newton polishing.
std::vector<Complex> oracle_poly_roots(const Polynomial& p);

/// Smallest real part over all order x order minors. Throws SizeLimitError
/// for n > 6.
double oracle_minors(const DenseMatrix& a, int order);

}  // namespace kms
