#include "normlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace normlab {

NormSpec NormSpec::ky_fan(int k) {
    if (k < 1) throw PreconditionError("ky_fan needs k >= 1");
    return {NormKind::KyFan, k, 2.0};
}

NormSpec NormSpec::schatten(double p) {
    if (!(p >= 1.0)) throw PreconditionError("schatten needs p >= 1");
    return {NormKind::Schatten, 1, p};
}

NormSpec NormSpec::op() { return {NormKind::Operator, 1, 2.0}; }
NormSpec NormSpec::trace() { return {NormKind::Trace, 1, 2.0}; }
NormSpec NormSpec::frobenius() { return {NormKind::Frobenius, 1, 2.0}; }

double norm(const ComplexMatrix& m, const NormSpec& spec,
            const EigOptions& opts) {
    const std::vector<double> sv = singular_values(m, opts);
    const int n = m.dim();
    switch (spec.kind) {
        case NormKind::KyFan: {
            if (spec.k < 1 || spec.k > n)
                throw PreconditionError("ky_fan index " + std::to_string(spec.k) +
                                        " out of range for dimension " +
                                        std::to_string(n));
            double s = 0.0;
            for (int i = 0; i < spec.k; ++i) s += sv[static_cast<size_t>(i)];
            return s;
        }
        case NormKind::Schatten: {
            if (std::isinf(spec.p)) return sv.front();
            double s = 0.0;
            for (double v : sv) s += std::pow(v, spec.p);
            return std::pow(s, 1.0 / spec.p);
        }
        case NormKind::Operator: return sv.front();
        case NormKind::Trace: {
            double s = 0.0;
            for (double v : sv) s += v;
            return s;
        }
        case NormKind::Frobenius: {
            double s = 0.0;
            for (double v : sv) s += v * v;
            return std::sqrt(s);
        }
    }
    throw Error("unreachable norm kind");
}

DominanceResult ky_fan_dominance(const ComplexMatrix& x, const ComplexMatrix& y,
                                 double tol, const EigOptions& opts) {
    if (x.dim() != y.dim())
        throw DimensionError("ky_fan_dominance dimension mismatch");
    const std::vector<double> sx = singular_values(x, opts);
    const std::vector<double> sy = singular_values(y, opts);

    DominanceResult res;
    res.margins.resize(sx.size());
    double px = 0.0, py = 0.0;
    res.min_margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < sx.size(); ++k) {
        px += sx[k];
        py += sy[k];
        res.margins[k] = py - px;
        if (res.margins[k] < res.min_margin) {
            res.min_margin = res.margins[k];
            res.binding_k = static_cast<int>(k) + 1;
        }
    }
    res.scale = std::max(1.0, py);  // trace norm of the dominating side
    res.holds = res.min_margin >= -tol * res.scale;
    return res;
}

bool weak_majorization(std::vector<double> x, std::vector<double> y,
                       double tol) {
    if (x.size() != y.size())
        throw DimensionError("weak_majorization length mismatch");
    std::sort(x.begin(), x.end(), std::greater<double>());
    std::sort(y.begin(), y.end(), std::greater<double>());
    double px = 0.0, py = 0.0;
    for (size_t k = 0; k < x.size(); ++k) {
        px += x[k];
        py += y[k];
        if (px > py + tol) return false;
    }
    return true;
}

DominanceResult monotone_convex_transfer_check(const HermitianMatrix& x,
                                               const HermitianMatrix& y,
                                               const ScalarFunction& g,
                                               double tol,
                                               const EigOptions& opts) {
    if (!g.convex_tagged() || !g.monotone || std::abs(g.value_at_zero) > 1e-12)
        throw PreconditionError(
            "transfer check needs increasing convex g with g(0) = 0");
    if (!is_psd(x, tol, opts) || !is_psd(y, tol, opts))
        throw PreconditionError("transfer check needs PSD inputs");
    const DominanceResult pre = ky_fan_dominance(x.matrix(), y.matrix(), tol, opts);
    if (!pre.holds)
        throw PreconditionError("transfer check requires Ky Fan dominance");

    const HermitianMatrix gx = apply_scalar_function(x, g, opts);
    const HermitianMatrix gy = apply_scalar_function(y, g, opts);
    return ky_fan_dominance(gx.matrix(), gy.matrix(), tol, opts);
}

}  // namespace normlab
