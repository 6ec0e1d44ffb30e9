#pragma once

#include <vector>

#include "normlab/matrix.hpp"
#include "normlab/scalar_function.hpp"

namespace normlab {

// Eigensolver knobs. `threshold` is relative to the Frobenius norm of the
// input; the tight setting (1e-15) is used for re-verification runs.
struct EigOptions {
    double threshold = 1e-13;
    int max_sweeps = 64;
};

// Eigenvalues sorted non-increasing plus a unitary eigenbasis (column j
// pairs with eigenvalue j).
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

// Cyclic Jacobi diagonalization with complex rotations. Deterministic:
// fixed sweep order, eigenvalues sorted non-increasing with stable ties,
// and each eigenvector's first nonzero component made real non-negative.
// Throws SolverError if the off-diagonal mass is still above threshold
// after max_sweeps sweeps.
Spectrum eig_hermitian(const HermitianMatrix& h, const EigOptions& opts = {});

// U f(Lambda) U* via the spectral decomposition. Eigenvalues in
// [-eps_clamp, 0) are clamped to 0 before applying a function on
// [0, inf); anything below the slack raises DomainError.
HermitianMatrix apply_scalar_function(const HermitianMatrix& h,
                                      const ScalarFunction& f,
                                      const EigOptions& opts = {});

// Non-increasing singular values: square roots of the eigenvalues of M*M
// clamped at zero.
std::vector<double> singular_values(const ComplexMatrix& m,
                                    const EigOptions& opts = {});

// (M*M)^(1/2), positive semidefinite.
HermitianMatrix abs_matrix(const ComplexMatrix& m, const EigOptions& opts = {});

// Z* A Z, symmetrized.
HermitianMatrix congruence(const ComplexMatrix& z, const HermitianMatrix& a);

struct LoewnerResult {
    bool holds = false;
    double margin = 0.0;  // smallest eigenvalue of Y - X
    double scale = 1.0;   // max(1, ||X||_op, ||Y||_op)
};

// Is X <= Y in the positive semidefinite order, within tol * scale?
LoewnerResult loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y,
                          double tol = 1e-8, const EigOptions& opts = {});

bool is_psd(const HermitianMatrix& h, double tol = 1e-8,
            const EigOptions& opts = {});
bool is_expansive(const ComplexMatrix& z, double tol = 1e-8,
                  const EigOptions& opts = {});
bool is_contraction(const ComplexMatrix& z, double tol = 1e-8,
                    const EigOptions& opts = {});

// Largest singular value (0 for the zero matrix).
double operator_norm(const ComplexMatrix& m, const EigOptions& opts = {});

}  // namespace normlab
