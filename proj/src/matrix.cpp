#include "normlab/matrix.hpp"

#include <cmath>
#include <utility>

namespace normlab {

namespace {

void check_dim(int n) {
    if (n < 1 || n > kMaxDim)
        throw DimensionError("matrix dimension must be in 1.." +
                             std::to_string(kMaxDim) + ", got " +
                             std::to_string(n));
}

void check_same_dim(int a, int b) {
    if (a != b)
        throw DimensionError("dimension mismatch: " + std::to_string(a) +
                             " vs " + std::to_string(b));
}

}  // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
    check_dim(n);
    a_.assign(static_cast<size_t>(n) * n, cxd(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int n, std::vector<cxd> entries) : n_(n) {
    check_dim(n);
    if (entries.size() != static_cast<size_t>(n) * n)
        throw DimensionError("entry count does not match dimension");
    a_ = std::move(entries);
    if (!all_finite()) throw PreconditionError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cxd ComplexMatrix::trace() const {
    cxd t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cxd& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const cxd& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix ComplexMatrix::submatrix(const std::vector<int>& keep) const {
    ComplexMatrix r(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            r(static_cast<int>(i), static_cast<int>(j)) =
                (*this)(keep[i], keep[j]);
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    check_same_dim(n_, rhs.n_);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    check_same_dim(n_, rhs.n_);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
    for (cxd& z : a_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a.dim(), b.dim());
    const int n = a.dim();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cxd aik = a(i, k);
            if (aik == cxd(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
    if (!m.all_finite()) throw PreconditionError("matrix entries must be finite");
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
        m_(i, i) = cxd(m(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const cxd v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = v;
            m_(j, i) = std::conj(v);
        }
    }
}

HermitianMatrix HermitianMatrix::zero(int n) {
    return HermitianMatrix(ComplexMatrix(n));
}

HermitianMatrix HermitianMatrix::identity(int n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
}

}  // namespace normlab
