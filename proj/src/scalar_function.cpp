#include "normlab/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "normlab/errors.hpp"

namespace normlab {

namespace {

double pwl_eval(const std::vector<std::pair<double, double>>& nodes, double t) {
    // Linear between nodes, linear extension beyond the end segments.
    const size_t m = nodes.size();
    size_t hi = m - 1;
    if (t <= nodes[0].first) hi = 1;
    else if (t >= nodes[m - 1].first) hi = m - 1;
    else {
        hi = 1;
        while (nodes[hi].first < t) ++hi;
    }
    const auto& [t0, y0] = nodes[hi - 1];
    const auto& [t1, y1] = nodes[hi];
    const double slope = (y1 - y0) / (t1 - t0);
    return y0 + slope * (t - t0);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

}  // namespace

ScalarFunction ScalarFunction::power(double p) {
    if (p <= 0.0) throw PreconditionError("power exponent must be positive");
    ScalarFunction f;
    f.kind = FunctionKind::Power;
    f.p = p;
    f.shape = p < 1.0 ? Shape::Concave : (p > 1.0 ? Shape::Convex : Shape::Affine);
    f.value_at_zero = 0.0;
    f.monotone = true;
    f.operator_concave = p <= 1.0;
    f.domain = FunctionDomain::NonNegative;
    return f;
}

ScalarFunction ScalarFunction::log1p() {
    ScalarFunction f;
    f.kind = FunctionKind::Log1p;
    f.shape = Shape::Concave;
    f.value_at_zero = 0.0;
    f.monotone = true;
    f.operator_concave = true;
    f.domain = FunctionDomain::NonNegative;
    return f;
}

ScalarFunction ScalarFunction::clamp(double a) {
    ScalarFunction f;
    f.kind = FunctionKind::Clamp;
    f.a = a;
    f.shape = Shape::Concave;
    f.value_at_zero = std::min(0.0, a);
    f.monotone = true;
    f.operator_concave = false;
    f.domain = FunctionDomain::Reals;
    return f;
}

ScalarFunction ScalarFunction::sqrt() {
    ScalarFunction f = power(0.5);
    f.kind = FunctionKind::Sqrt;
    return f;
}

ScalarFunction ScalarFunction::affine(double alpha, double beta) {
    ScalarFunction f;
    f.kind = FunctionKind::Affine;
    f.alpha = alpha;
    f.beta = beta;
    f.shape = Shape::Affine;
    f.value_at_zero = beta;
    f.monotone = alpha >= 0.0;
    f.operator_concave = true;
    f.domain = FunctionDomain::Reals;
    return f;
}

ScalarFunction ScalarFunction::angle(double a) {
    if (a <= 0.0) throw PreconditionError("angle knot must be positive");
    ScalarFunction f;
    f.kind = FunctionKind::Angle;
    f.a = a;
    f.shape = Shape::Convex;
    f.value_at_zero = 0.0;
    f.monotone = true;
    f.operator_concave = false;
    f.domain = FunctionDomain::NonNegative;
    return f;
}

ScalarFunction ScalarFunction::smoother(double a, double r) {
    if (a <= 0.0 || r <= 0.0)
        throw PreconditionError("smoother requires a > 0 and r > 0");
    ScalarFunction f;
    f.kind = FunctionKind::Smoother;
    f.a = a;
    f.r = r;
    f.shape = Shape::Convex;
    f.value_at_zero = 0.0;
    f.monotone = true;
    f.operator_concave = false;
    f.domain = FunctionDomain::NonNegative;
    return f;
}

ScalarFunction ScalarFunction::smoother_inverse(double a, double r) {
    if (a <= 0.0 || r <= 0.0)
        throw PreconditionError("smoother-inverse requires a > 0 and r > 0");
    ScalarFunction f;
    f.kind = FunctionKind::SmootherInverse;
    f.a = a;
    f.r = r;
    f.shape = Shape::Concave;
    f.value_at_zero = 0.0;
    f.monotone = true;
    f.operator_concave = true;
    f.domain = FunctionDomain::NonNegative;
    return f;
}

ScalarFunction ScalarFunction::pwl(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2)
        throw PreconditionError("pwl needs at least two nodes");
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i].first > nodes[i - 1].first))
            throw PreconditionError("pwl nodes must have strictly increasing t");

    ScalarFunction f;
    f.kind = FunctionKind::Pwl;
    f.nodes = std::move(nodes);
    f.domain = f.nodes.front().first < 0.0 ? FunctionDomain::Reals
                                           : FunctionDomain::NonNegative;

    // Infer the shape tags from the chord slopes.
    constexpr double eps = 1e-12;
    bool concave = true, convex = true, mono = true;
    double prev_slope = 0.0;
    for (size_t i = 1; i < f.nodes.size(); ++i) {
        const double slope = (f.nodes[i].second - f.nodes[i - 1].second) /
                             (f.nodes[i].first - f.nodes[i - 1].first);
        if (slope < -eps) mono = false;
        if (i > 1) {
            if (slope > prev_slope + eps) concave = false;
            if (slope < prev_slope - eps) convex = false;
        }
        prev_slope = slope;
    }
    f.shape = concave && convex ? Shape::Affine
              : concave        ? Shape::Concave
              : convex         ? Shape::Convex
                               : Shape::Other;
    f.monotone = mono;
    f.value_at_zero = pwl_eval(f.nodes, 0.0);
    return f;
}

std::string ScalarFunction::name() const {
    switch (kind) {
        case FunctionKind::Power: return "power(" + fmt(p) + ")";
        case FunctionKind::Log1p: return "log1p";
        case FunctionKind::Clamp: return "clamp(" + fmt(a) + ")";
        case FunctionKind::Sqrt: return "sqrt";
        case FunctionKind::Affine:
            return "affine(" + fmt(alpha) + "," + fmt(beta) + ")";
        case FunctionKind::Angle: return "angle(" + fmt(a) + ")";
        case FunctionKind::Smoother:
            return "smoother(" + fmt(a) + "," + fmt(r) + ")";
        case FunctionKind::SmootherInverse:
            return "smoother-inverse(" + fmt(a) + "," + fmt(r) + ")";
        case FunctionKind::Pwl:
            return "pwl[" + std::to_string(nodes.size()) + "]";
    }
    return "?";
}

double eval(const ScalarFunction& f, double t) {
    if (f.domain == FunctionDomain::NonNegative && t < 0.0)
        throw DomainError("argument " + fmt(t) + " below the domain of " +
                              f.name(),
                          t);
    switch (f.kind) {
        case FunctionKind::Power: return std::pow(t, f.p);
        case FunctionKind::Log1p: return std::log1p(t);
        case FunctionKind::Clamp: return std::min(t, f.a);
        case FunctionKind::Sqrt: return std::sqrt(t);
        case FunctionKind::Affine: return f.alpha * t + f.beta;
        case FunctionKind::Angle: return 0.5 * (std::abs(t - f.a) + t - f.a);
        case FunctionKind::Smoother: {
            const double d = t - f.a;
            return 0.5 * (std::sqrt(d * d + f.r) + t - std::sqrt(f.a * f.a + f.r));
        }
        case FunctionKind::SmootherInverse: {
            // c - a is computed as r / (c + a) to avoid cancellation for
            // small r; the two forms are algebraically identical.
            const double c = std::sqrt(f.a * f.a + f.r);
            const double denom = 2.0 * t + f.r / (c + f.a);
            return t - 0.5 * f.r / denom + 0.5 * (c + f.a);
        }
        case FunctionKind::Pwl: return pwl_eval(f.nodes, t);
    }
    throw Error("unreachable function kind");
}

AngleDecomposition angle_decompose(const ScalarFunction& g,
                                   const std::vector<double>& grid) {
    if (!g.convex_tagged())
        throw PreconditionError("angle_decompose requires a convex function");
    if (grid.size() < 2 || grid.front() != 0.0)
        throw PreconditionError("grid must start at 0 and have >= 2 knots");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw PreconditionError("grid knots must be strictly increasing");

    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) values[i] = eval(g, grid[i]);
    if (std::abs(values[0]) > 1e-12)
        throw PreconditionError("angle_decompose requires g(0) = 0");

    std::vector<double> slopes(grid.size() - 1);
    double slope_scale = 1.0;
    for (size_t i = 1; i < grid.size(); ++i) {
        slopes[i - 1] = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        slope_scale = std::max(slope_scale, std::abs(slopes[i - 1]));
    }

    AngleDecomposition dec;
    dec.lambda0 = std::max(slopes[0], 0.0);
    for (size_t i = 1; i < slopes.size(); ++i) {
        double c = slopes[i] - slopes[i - 1];
        if (c < -1e-9 * slope_scale)
            throw ShapeError("negative slope increment at knot " + fmt(grid[i]),
                             grid[i]);
        if (c > 0.0) dec.terms.emplace_back(grid[i], c);
    }
    return dec;
}

double decomposition_eval(const AngleDecomposition& dec, double t) {
    double v = dec.lambda0 * t;
    for (const auto& [a, c] : dec.terms) v += c * std::max(t - a, 0.0);
    return v;
}

ShapeCheckResult check_shape_on_grid(const ScalarFunction& f,
                                     const std::vector<double>& grid) {
    if (grid.size() < 3)
        throw PreconditionError("shape check needs at least 3 grid points");
    std::vector<double> values(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) values[i] = eval(f, grid[i]);

    std::vector<double> slopes(grid.size() - 1);
    double slope_scale = 1.0;
    for (size_t i = 1; i < grid.size(); ++i) {
        slopes[i - 1] = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        slope_scale = std::max(slope_scale, std::abs(slopes[i - 1]));
    }
    const double tol = 1e-9 * slope_scale;

    ShapeCheckResult res;
    if (f.shape == Shape::Other) {
        res.ok = false;
        return res;
    }
    for (size_t i = 1; i < slopes.size(); ++i) {
        const double d = slopes[i] - slopes[i - 1];
        const bool bad = (f.shape == Shape::Concave && d > tol) ||
                         (f.shape == Shape::Convex && d < -tol) ||
                         (f.shape == Shape::Affine && std::abs(d) > tol);
        if (bad) {
            res.ok = false;
            res.witness = {grid[i - 1], grid[i], grid[i + 1]};
            return res;
        }
    }
    return res;
}

ScalarSanityReport scalar_sanity(const ScalarFunction& f) {
    if (!f.concave_tagged())
        throw PreconditionError("scalar_sanity requires a concave function");
    static const double as[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
    static const double zs[] = {1.0, 1.5, 2.0, 4.0, 10.0};

    ScalarSanityReport rep;
    rep.worst_scaling_margin = rep.worst_subadd_margin = 1e300;
    for (double a : as) {
        for (double z : zs) {
            const double lhs = eval(f, z * a);
            const double rhs = z * eval(f, a);
            const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
            rep.worst_scaling_margin = std::min(rep.worst_scaling_margin, rhs - lhs);
            if (lhs > rhs + tol) rep.ok = false;
            ++rep.checks;
        }
        for (double b : as) {
            const double lhs = eval(f, a + b);
            const double rhs = eval(f, a) + eval(f, b);
            const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
            rep.worst_subadd_margin = std::min(rep.worst_subadd_margin, rhs - lhs);
            if (lhs > rhs + tol) rep.ok = false;
            ++rep.checks;
        }
    }
    return rep;
}

std::vector<ScalarFunction> concave_catalog() {
    return {
        ScalarFunction::sqrt(),
        ScalarFunction::power(0.7),
        ScalarFunction::power(0.25),
        ScalarFunction::log1p(),
        ScalarFunction::clamp(1.0),
        ScalarFunction::clamp(2.5),
        ScalarFunction::affine(0.5, 1.0),
        ScalarFunction::smoother_inverse(1.0, 0.5),
        ScalarFunction::pwl({{0.0, 0.0}, {1.0, 0.8}, {2.0, 1.2}, {5.0, 1.5}, {10.0, 1.6}}),
    };
}

std::vector<ScalarFunction> convex_catalog() {
    return {
        ScalarFunction::power(2.0),
        ScalarFunction::power(2.5),
        ScalarFunction::power(3.0),
        ScalarFunction::angle(0.5),
        ScalarFunction::angle(1.0),
        ScalarFunction::angle(2.0),
        ScalarFunction::smoother(1.0, 0.1),
        ScalarFunction::pwl({{0.0, 0.0}, {1.0, 0.5}, {2.0, 2.0}, {4.0, 7.0}}),
    };
}

std::vector<ScalarFunction> operator_concave_catalog() {
    return {
        ScalarFunction::sqrt(),
        ScalarFunction::power(0.7),
        ScalarFunction::power(0.25),
        ScalarFunction::log1p(),
        ScalarFunction::smoother_inverse(1.0, 0.5),
        ScalarFunction::smoother_inverse(2.0, 0.1),
    };
}

std::vector<ScalarFunction> reals_concave_catalog() {
    return {
        ScalarFunction::clamp(1.0),
        ScalarFunction::clamp(0.5),
        ScalarFunction::pwl({{-10.0, -20.0}, {-1.0, -2.0}, {0.0, 0.0}, {1.0, 0.5}, {10.0, 2.0}}),
        ScalarFunction::pwl({{-5.0, -12.0}, {-1.0, -2.0}, {0.0, 0.0}, {2.0, 1.0}, {8.0, 2.5}}),
    };
}

std::vector<ScalarFunction> monotone_concave_catalog() {
    return {
        ScalarFunction::sqrt(),
        ScalarFunction::power(0.7),
        ScalarFunction::log1p(),
        ScalarFunction::clamp(1.0),
        ScalarFunction::affine(0.5, 1.0),
        ScalarFunction::smoother_inverse(1.0, 0.5),
    };
}

}  // namespace normlab
