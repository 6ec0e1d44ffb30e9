#include "normlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace normlab {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q). The rotation acts on the
// (p, q) plane as [[c, s*phase], [-conj(s*phase), c]] with real c, s.
void rotate(ComplexMatrix& a, ComplexMatrix& u, int p, int q) {
    const cxd g = a(p, q);
    const double absg = std::abs(g);
    if (absg == 0.0) return;

    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();
    const double theta = (beta - alpha) / (2.0 * absg);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const cxd sigma = (t * c) * (g / absg);

    const int n = a.dim();
    // Right multiplication by the rotation (columns p and q).
    for (int k = 0; k < n; ++k) {
        const cxd akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - std::conj(sigma) * akq;
        a(k, q) = sigma * akp + c * akq;
    }
    // Left multiplication by its adjoint (rows p and q).
    for (int k = 0; k < n; ++k) {
        const cxd apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - sigma * aqk;
        a(q, k) = std::conj(sigma) * apk + c * aqk;
    }
    // Pin the rotated pair to its exact limit.
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = cxd(a(p, p).real(), 0.0);
    a(q, q) = cxd(a(q, q).real(), 0.0);

    for (int k = 0; k < n; ++k) {
        const cxd ukp = u(k, p), ukq = u(k, q);
        u(k, p) = c * ukp - std::conj(sigma) * ukq;
        u(k, q) = sigma * ukp + c * ukq;
    }
}

// Multiply each eigenvector by a unit phase so its first component of
// non-negligible modulus becomes real non-negative.
void fix_column_phases(ComplexMatrix& u) {
    const int n = u.dim();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(u(i, j));
            if (m > 1e-12) {
                const cxd phase = std::conj(u(i, j)) / m;
                for (int k = 0; k < n; ++k) u(k, j) *= phase;
                break;
            }
        }
    }
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix& h, const EigOptions& opts) {
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix u = ComplexMatrix::identity(n);

    const double norm_f = a.frobenius_norm();
    const double threshold = opts.threshold * norm_f;

    double off = off_diagonal_norm(a);
    if (norm_f > 0.0) {
        int sweep = 0;
        while (off > threshold && sweep < opts.max_sweeps) {
            for (int p = 0; p < n - 1; ++p)
                for (int q = p + 1; q < n; ++q) rotate(a, u, p, q);
            off = off_diagonal_norm(a);
            ++sweep;
        }
        if (off > threshold)
            throw SolverError("Jacobi did not converge in " +
                                  std::to_string(opts.max_sweeps) +
                                  " sweeps; off-diagonal residual " +
                                  std::to_string(off),
                              off);
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a(i, i).real() > a(j, j).real();
    });

    Spectrum s;
    s.eigenvalues.resize(static_cast<size_t>(n));
    s.eigenvectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        s.eigenvalues[static_cast<size_t>(j)] = a(order[static_cast<size_t>(j)],
                                                  order[static_cast<size_t>(j)])
                                                    .real();
        for (int i = 0; i < n; ++i)
            s.eigenvectors(i, j) = u(i, order[static_cast<size_t>(j)]);
    }
    fix_column_phases(s.eigenvectors);
    return s;
}

namespace {

HermitianMatrix assemble(const Spectrum& s, const std::vector<double>& values) {
    const int n = s.eigenvectors.dim();
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cxd acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += s.eigenvectors(i, k) * values[static_cast<size_t>(k)] *
                       std::conj(s.eigenvectors(j, k));
            m(i, j) = acc;
        }
    return HermitianMatrix(m);
}

}  // namespace

HermitianMatrix apply_scalar_function(const HermitianMatrix& h,
                                      const ScalarFunction& f,
                                      const EigOptions& opts) {
    const Spectrum s = eig_hermitian(h, opts);
    const double op_norm =
        s.eigenvalues.empty()
            ? 0.0
            : std::max(std::abs(s.eigenvalues.front()),
                       std::abs(s.eigenvalues.back()));
    const double clamp_slack = 1e-9 * std::max(1.0, op_norm);

    std::vector<double> mapped(s.eigenvalues.size());
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
        double lambda = s.eigenvalues[i];
        if (f.domain == FunctionDomain::NonNegative && lambda < 0.0) {
            if (lambda < -clamp_slack)
                throw DomainError("eigenvalue " + std::to_string(lambda) +
                                      " below the domain of " + f.name(),
                                  lambda);
            lambda = 0.0;
        }
        mapped[i] = eval(f, lambda);
    }
    return assemble(s, mapped);
}

std::vector<double> singular_values(const ComplexMatrix& m,
                                    const EigOptions& opts) {
    const HermitianMatrix gram(m.adjoint() * m);
    const Spectrum s = eig_hermitian(gram, opts);
    std::vector<double> sv(s.eigenvalues.size());
    for (size_t i = 0; i < sv.size(); ++i)
        sv[i] = std::sqrt(std::max(s.eigenvalues[i], 0.0));
    return sv;
}

HermitianMatrix abs_matrix(const ComplexMatrix& m, const EigOptions& opts) {
    const HermitianMatrix gram(m.adjoint() * m);
    const Spectrum s = eig_hermitian(gram, opts);
    std::vector<double> roots(s.eigenvalues.size());
    for (size_t i = 0; i < roots.size(); ++i)
        roots[i] = std::sqrt(std::max(s.eigenvalues[i], 0.0));
    return assemble(s, roots);
}

HermitianMatrix congruence(const ComplexMatrix& z, const HermitianMatrix& a) {
    if (z.dim() != a.dim())
        throw DimensionError("congruence dimension mismatch: " +
                             std::to_string(z.dim()) + " vs " +
                             std::to_string(a.dim()));
    return HermitianMatrix(z.adjoint() * a.matrix() * z);
}

LoewnerResult loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y,
                          double tol, const EigOptions& opts) {
    if (x.dim() != y.dim())
        throw DimensionError("loewner_leq dimension mismatch");
    const Spectrum d = eig_hermitian(y - x, opts);
    LoewnerResult res;
    res.margin = d.eigenvalues.back();
    res.scale = std::max({1.0, operator_norm(x.matrix(), opts),
                          operator_norm(y.matrix(), opts)});
    res.holds = res.margin >= -tol * res.scale;
    return res;
}

bool is_psd(const HermitianMatrix& h, double tol, const EigOptions& opts) {
    const Spectrum s = eig_hermitian(h, opts);
    const double op_norm = std::max(std::abs(s.eigenvalues.front()),
                                    std::abs(s.eigenvalues.back()));
    return s.eigenvalues.back() >= -tol * std::max(1.0, op_norm);
}

bool is_expansive(const ComplexMatrix& z, double tol, const EigOptions& opts) {
    return singular_values(z, opts).back() >= 1.0 - tol;
}

bool is_contraction(const ComplexMatrix& z, double tol, const EigOptions& opts) {
    return singular_values(z, opts).front() <= 1.0 + tol;
}

double operator_norm(const ComplexMatrix& m, const EigOptions& opts) {
    return singular_values(m, opts).front();
}

}  // namespace normlab
