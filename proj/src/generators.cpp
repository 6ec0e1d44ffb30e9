#include "normlab/generators.hpp"

#include <cmath>

#include "normlab/linalg.hpp"
#include "normlab/scalar_function.hpp"

namespace normlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cxd gaussian_complex(Rng& rng) {
    // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    const auto [x, y] = rng.gaussian_pair();
    return cxd(x, y) * (1.0 / std::sqrt(2.0));
}

// Rectangular column-major scratch for the tall QR.
struct Rect {
    int rows = 0, cols = 0;
    std::vector<cxd> a;
    Rect(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    cxd& at(int i, int j) { return a[static_cast<size_t>(j) * rows + i]; }
    const cxd& at(int i, int j) const {
        return a[static_cast<size_t>(j) * rows + i];
    }
};

// Householder QR of a rows x cols Gaussian matrix (rows >= cols); returns
// the thin Q with the Haar phase normalization from the R diagonal.
Rect haar_isometry(Rng& rng, int rows, int cols) {
    Rect r(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) r.at(i, j) = gaussian_complex(rng);

    Rect q(rows, rows);
    for (int i = 0; i < rows; ++i) q.at(i, i) = 1.0;

    std::vector<cxd> v(static_cast<size_t>(rows));
    for (int j = 0; j < cols; ++j) {
        double normx = 0.0;
        for (int i = j; i < rows; ++i) normx += std::norm(r.at(i, j));
        normx = std::sqrt(normx);
        if (normx == 0.0) continue;

        const cxd x0 = r.at(j, j);
        const double absx0 = std::abs(x0);
        const cxd phase = absx0 == 0.0 ? cxd(1.0, 0.0) : x0 / absx0;

        for (int i = j; i < rows; ++i) v[static_cast<size_t>(i)] = r.at(i, j);
        v[static_cast<size_t>(j)] += phase * normx;
        double vv = 0.0;
        for (int i = j; i < rows; ++i) vv += std::norm(v[static_cast<size_t>(i)]);
        if (vv == 0.0) continue;
        const double tau = 2.0 / vv;

        // Reflect the remaining columns of R.
        for (int c = j; c < cols; ++c) {
            cxd dot = 0.0;
            for (int i = j; i < rows; ++i)
                dot += std::conj(v[static_cast<size_t>(i)]) * r.at(i, c);
            dot *= tau;
            for (int i = j; i < rows; ++i)
                r.at(i, c) -= dot * v[static_cast<size_t>(i)];
        }
        // Accumulate Q <- Q H (H is Hermitian).
        for (int row = 0; row < rows; ++row) {
            cxd dot = 0.0;
            for (int i = j; i < rows; ++i)
                dot += q.at(row, i) * v[static_cast<size_t>(i)];
            dot *= tau;
            for (int i = j; i < rows; ++i)
                q.at(row, i) -= dot * std::conj(v[static_cast<size_t>(i)]);
        }
    }

    Rect thin(rows, cols);
    for (int j = 0; j < cols; ++j) {
        const cxd d = r.at(j, j);
        const double absd = std::abs(d);
        const cxd phase = absd == 0.0 ? cxd(1.0, 0.0) : d / absd;
        for (int i = 0; i < rows; ++i) thin.at(i, j) = q.at(i, j) * phase;
    }
    return thin;
}

ComplexMatrix gaussian_matrix(Rng& rng, int n, double entry_scale) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = entry_scale * gaussian_complex(rng);
    return g;
}

}  // namespace

std::pair<double, double> Rng::gaussian_pair() {
    const double u1 = 1.0 - next_double();  // in (0, 1]
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return {radius * std::cos(kTwoPi * u2), radius * std::sin(kTwoPi * u2)};
}

HermitianMatrix random_psd(Rng& rng, int n) {
    const ComplexMatrix g = gaussian_matrix(rng, n, 1.0);
    return HermitianMatrix(g.adjoint() * g * cxd(1.0 / n, 0.0));
}

HermitianMatrix random_psd_rank_deficient(Rng& rng, int n, int rank) {
    if (rank < 1 || rank > n)
        throw PreconditionError("rank must be in 1..n");
    ComplexMatrix g = gaussian_matrix(rng, n, 1.0);
    for (int j = rank; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = 0.0;
    return HermitianMatrix(g.adjoint() * g * cxd(1.0 / n, 0.0));
}

HermitianMatrix random_psd_with_spectrum(Rng& rng,
                                         const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    const ComplexMatrix u = random_unitary(rng, n);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cxd acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += u(i, k) * values[static_cast<size_t>(k)] *
                       std::conj(u(j, k));
            m(i, j) = acc;
        }
    return HermitianMatrix(m);
}

HermitianMatrix random_psd_degenerate(Rng& rng, int n) {
    if (n < 2) return random_psd(rng, n);
    // Fewer distinct values than slots forces at least one repeat.
    const int distinct = 1 + rng.below(n - 1);
    std::vector<double> pool(static_cast<size_t>(distinct));
    for (double& v : pool) v = rng.uniform(0.25, 2.5);
    std::vector<double> values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        values[static_cast<size_t>(i)] =
            i < distinct ? pool[static_cast<size_t>(i)]
                         : pool[static_cast<size_t>(rng.below(distinct))];
    return random_psd_with_spectrum(rng, values);
}

HermitianMatrix random_hermitian(Rng& rng, int n) {
    const ComplexMatrix g = gaussian_matrix(rng, n, 1.0 / std::sqrt(n));
    return HermitianMatrix(cxd(0.5, 0.0) * (g + g.adjoint()));
}

ComplexMatrix random_unitary(Rng& rng, int n) {
    const Rect q = haar_isometry(rng, n, n);
    ComplexMatrix u(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u(i, j) = q.at(i, j);
    return u;
}

ComplexMatrix random_expansive(Rng& rng, int n) {
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix w = random_unitary(rng, n);
    std::vector<double> d(static_cast<size_t>(n));
    for (double& x : d) x = 1.0 + rng.uniform(0.0, 1.5);
    return u * ComplexMatrix::diagonal(d) * w.adjoint();
}

ComplexMatrix random_expansive_near_identity(Rng& rng, int n, double eps) {
    if (eps < 0.0) throw PreconditionError("eps must be non-negative");
    const HermitianMatrix p = random_psd(rng, n);
    return ComplexMatrix::identity(n) + cxd(eps, 0.0) * p.matrix();
}

ComplexMatrix random_contraction(Rng& rng, int n) {
    const ComplexMatrix u = random_unitary(rng, n);
    const ComplexMatrix w = random_unitary(rng, n);
    std::vector<double> d(static_cast<size_t>(n));
    for (double& x : d) x = rng.next_double();
    return u * ComplexMatrix::diagonal(d) * w.adjoint();
}

ComplexMatrix random_general(Rng& rng, int n) {
    return gaussian_matrix(rng, n, 1.0 / std::sqrt(n));
}

std::vector<ComplexMatrix> random_contractive_family(Rng& rng, int n, int m) {
    if (m < 1) throw PreconditionError("family needs at least one block");
    if (m * n > 16 * kMaxDim)
        throw PreconditionError("family too large");
    const double rho = 1.0 - rng.uniform(0.0, 0.999);  // in (0.001, 1]
    const Rect q = haar_isometry(rng, m * n, n);
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(static_cast<size_t>(m));
    for (int b = 0; b < m; ++b) {
        ComplexMatrix z(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) z(i, j) = rho * q.at(b * n + i, j);
        blocks.push_back(std::move(z));
    }
    return blocks;
}

OperatorConcavityReport check_operator_concave_sample(const ScalarFunction& f,
                                                      int n, int trials,
                                                      std::uint64_t seed,
                                                      double tol) {
    if (!f.operator_concave)
        throw PreconditionError("function is not tagged operator concave");
    OperatorConcavityReport rep;
    rep.trials = trials;
    rep.worst_margin = 1e300;
    for (int t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
        const HermitianMatrix a = random_psd(rng, n);
        const HermitianMatrix b = random_psd(rng, n);
        const HermitianMatrix mid = 0.5 * (a + b);
        const HermitianMatrix lhs = apply_scalar_function(mid, f);
        const HermitianMatrix rhs =
            0.5 * (apply_scalar_function(a, f) + apply_scalar_function(b, f));
        const LoewnerResult lo = loewner_leq(rhs, lhs, tol);
        if (lo.margin < rep.worst_margin) {
            rep.worst_margin = lo.margin;
            rep.witness_trial = static_cast<std::uint64_t>(t);
        }
        if (!lo.holds) rep.ok = false;
    }
    return rep;
}

}  // namespace normlab
