#pragma once

#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/rng.hpp"

namespace normlab {

// Gram matrix G*G/n of a standard complex Gaussian G; eigenvalues stay
// O(1) across dimensions.
HermitianMatrix random_psd(Rng& rng, int n);

// Same construction with the trailing n - rank columns of G zeroed, so
// exactly n - rank eigenvalues vanish.
HermitianMatrix random_psd_rank_deficient(Rng& rng, int n, int rank);

// U diag(values) U* for a Haar unitary U; used to build spectra with
// prescribed multiplicities.
HermitianMatrix random_psd_with_spectrum(Rng& rng,
                                         const std::vector<double>& values);

// Random PSD matrix with at least one repeated eigenvalue (n >= 2).
HermitianMatrix random_psd_degenerate(Rng& rng, int n);

// GUE-like Hermitian matrix (G + G*)/2, indefinite with high probability.
HermitianMatrix random_hermitian(Rng& rng, int n);

// Haar unitary via Householder QR with the R-diagonal phase fix.
ComplexMatrix random_unitary(Rng& rng, int n);

// U (I + D) W* with D >= 0 diagonal; all singular values >= 1.
ComplexMatrix random_expansive(Rng& rng, int n);

// I + eps * P for a random PSD P; expansive for eps >= 0.
ComplexMatrix random_expansive_near_identity(Rng& rng, int n, double eps);

// U D W* with D diagonal in [0, 1]; largest singular value <= 1.
ComplexMatrix random_contraction(Rng& rng, int n);

// Unstructured complex Gaussian scaled by 1/sqrt(n).
ComplexMatrix random_general(Rng& rng, int n);

// m blocks of a scaled (m n) x n random isometry; the blocks satisfy
// sum_i Z_i* Z_i = rho^2 I with rho in (0, 1].
std::vector<ComplexMatrix> random_contractive_family(Rng& rng, int n, int m);

}  // namespace normlab
