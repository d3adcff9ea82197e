#pragma once

#include <vector>

#include "kms/chebpoly.hpp"

namespace kms {

/// All zeros of p, with multiplicity.
///
/// Eigenvalues of the companion matrix by shifted complex QR iteration,
/// followed by Newton polishing on the original coefficients. Pairs of zeros
/// that sit within 1e-5 of each other are tested for being one double zero
/// (Newton on p'), which restores full accuracy at defective points where
/// plain companion roots split by ~sqrt(eps).
///
/// Throws ConvergenceError if the QR iteration stalls.
std::vector<Complex> find_roots(const Polynomial& p);

}  // namespace kms
