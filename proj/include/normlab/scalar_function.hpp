#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace normlab {

enum class FunctionKind {
    Power,           // t^p on [0, inf)
    Log1p,           // log(1 + t)
    Clamp,           // min(t, a), defined on all of R
    Sqrt,            // t^(1/2)
    Affine,          // alpha * t + beta, defined on all of R
    Angle,           // (|t - a| + t - a) / 2, the hinge at a
    Smoother,        // (sqrt((t-a)^2 + r) + t - sqrt(a^2 + r)) / 2
    SmootherInverse, // inverse of Smoother, concave
    Pwl,             // piecewise-linear through given nodes
};

enum class Shape { Concave, Convex, Affine, Other };
enum class FunctionDomain { NonNegative, Reals };

// A scalar function from the catalog with closed-form evaluation and
// shape/monotonicity tags. The operator_concave tag records a literature
// claim; it is sample-tested, never proved.
struct ScalarFunction {
    FunctionKind kind = FunctionKind::Sqrt;
    double p = 0.5;      // Power
    double a = 1.0;      // Clamp / Angle / Smoother / SmootherInverse
    double r = 1.0;      // Smoother / SmootherInverse
    double alpha = 0.0;  // Affine slope
    double beta = 0.0;   // Affine intercept
    std::vector<std::pair<double, double>> nodes;  // Pwl (t, f(t)), t increasing

    Shape shape = Shape::Concave;
    double value_at_zero = 0.0;
    bool monotone = true;
    bool operator_concave = false;
    FunctionDomain domain = FunctionDomain::NonNegative;

    static ScalarFunction power(double p);
    static ScalarFunction log1p();
    static ScalarFunction clamp(double a);
    static ScalarFunction sqrt();
    static ScalarFunction affine(double alpha, double beta);
    static ScalarFunction angle(double a);
    static ScalarFunction smoother(double a, double r);
    static ScalarFunction smoother_inverse(double a, double r);
    static ScalarFunction pwl(std::vector<std::pair<double, double>> nodes);

    bool concave_tagged() const {
        return shape == Shape::Concave || shape == Shape::Affine;
    }
    bool convex_tagged() const {
        return shape == Shape::Convex || shape == Shape::Affine;
    }

    std::string name() const;
};

// Closed-form evaluation; throws DomainError when t is outside the domain.
double eval(const ScalarFunction& f, double t);

// Positive combination of hinge functions reconstructing a convex g with
// g(0) = 0 on a grid: g(t) ~ lambda0 * t + sum_i c_i * angle(a_i)(t).
struct AngleDecomposition {
    double lambda0 = 0.0;
    std::vector<std::pair<double, double>> terms;  // (knot a_i, coefficient c_i)
};

AngleDecomposition angle_decompose(const ScalarFunction& g,
                                   const std::vector<double>& grid);
double decomposition_eval(const AngleDecomposition& dec, double t);

struct ShapeCheckResult {
    bool ok = true;
    // Grid triple witnessing the violated slope monotonicity, if any.
    std::optional<std::array<double, 3>> witness;
};

// Verifies the concave/convex/affine tag via chord-slope monotonicity on
// the given grid (at least 3 points).
ShapeCheckResult check_shape_on_grid(const ScalarFunction& f,
                                     const std::vector<double>& grid);

struct OperatorConcavityReport {
    bool ok = true;
    double worst_margin = 0.0;
    int trials = 0;
    std::uint64_t witness_trial = 0;  // trial index of the worst margin
};

// Samples random PSD pairs (A, B) of the given dimension and tests the
// midpoint concavity f((A+B)/2) >= (f(A)+f(B))/2 in the Loewner order.
OperatorConcavityReport check_operator_concave_sample(const ScalarFunction& f,
                                                      int n, int trials,
                                                      std::uint64_t seed,
                                                      double tol = 1e-8);

struct ScalarSanityReport {
    bool ok = true;
    double worst_scaling_margin = 0.0;  // min over samples of z f(a) - f(z a)
    double worst_subadd_margin = 0.0;   // min over samples of f(a)+f(b)-f(a+b)
    int checks = 0;
};

// Grid check of the two scalar inequalities f(z a) <= z f(a) (z >= 1) and
// f(a + b) <= f(a) + f(b) for concave non-negative f.
ScalarSanityReport scalar_sanity(const ScalarFunction& f);

// Fixed catalogs the campaigns draw from.
std::vector<ScalarFunction> concave_catalog();
std::vector<ScalarFunction> convex_catalog();
std::vector<ScalarFunction> operator_concave_catalog();
std::vector<ScalarFunction> reals_concave_catalog();
std::vector<ScalarFunction> monotone_concave_catalog();

}  // namespace normlab
