#pragma once

#include <vector>

#include "normlab/linalg.hpp"

namespace normlab {

enum class NormKind { KyFan, Schatten, Operator, Trace, Frobenius };

// A symmetric norm selector. Aliases: operator == ky_fan(1) == schatten(inf),
// trace == ky_fan(n) == schatten(1), frobenius == schatten(2).
struct NormSpec {
    NormKind kind = NormKind::Operator;
    int k = 1;       // KyFan
    double p = 2.0;  // Schatten; may be infinity

    static NormSpec ky_fan(int k);
    static NormSpec schatten(double p);
    static NormSpec op();
    static NormSpec trace();
    static NormSpec frobenius();
};

double norm(const ComplexMatrix& m, const NormSpec& spec,
            const EigOptions& opts = {});

struct DominanceResult {
    bool holds = false;
    std::vector<double> margins;  // margins[k-1] = ||Y||_k - ||X||_k
    int binding_k = 1;            // 1-based index of the smallest margin
    double min_margin = 0.0;
    double scale = 1.0;  // max(1, ||Y||_trace)
};

// Compares all Ky Fan norms of X and Y. Dominance in every Ky Fan norm
// extends to every symmetric norm, so this is the complete check.
DominanceResult ky_fan_dominance(const ComplexMatrix& x, const ComplexMatrix& y,
                                 double tol = 1e-8, const EigOptions& opts = {});

// True iff every partial sum of x (sorted non-increasing) is bounded by
// the matching partial sum of y, within tol.
bool weak_majorization(std::vector<double> x, std::vector<double> y,
                       double tol = 0.0);

// Given PSD X dominated by Y in every Ky Fan norm, checks that the images
// under an increasing convex g with g(0) = 0 are again dominated.
DominanceResult monotone_convex_transfer_check(const HermitianMatrix& x,
                                               const HermitianMatrix& y,
                                               const ScalarFunction& g,
                                               double tol = 1e-8,
                                               const EigOptions& opts = {});

}  // namespace normlab
