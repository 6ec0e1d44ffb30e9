#pragma once

#include <complex>
#include <vector>

#include "normlab/errors.hpp"

namespace normlab {

using cxd = std::complex<double>;

inline constexpr int kMaxDim = 64;

// Dense square complex matrix, row-major, value semantics.
// Dimensions are restricted to 1..64 and entries must be finite.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n);
    ComplexMatrix(int n, std::vector<cxd> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const std::vector<double>& d);

    int dim() const { return n_; }

    cxd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cxd& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * n_ + j];
    }

    ComplexMatrix adjoint() const;
    cxd trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    // Principal submatrix on the given (strictly increasing) index set.
    ComplexMatrix submatrix(const std::vector<int>& keep) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cxd s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(cxd s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cxd s) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    int n_ = 0;
    std::vector<cxd> a_;
};

// Hermitian matrix. Construction symmetrizes the input, (M + M*)/2,
// so entries(i,j) == conj(entries(j,i)) holds exactly and the diagonal
// is exactly real.
class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& m);

    static HermitianMatrix zero(int n);
    static HermitianMatrix identity(int n);
    static HermitianMatrix diagonal(const std::vector<double>& d);

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cxd& operator()(int i, int j) const { return m_(i, j); }

    double trace() const { return m_.trace().real(); }
    double frobenius_norm() const { return m_.frobenius_norm(); }

    HermitianMatrix submatrix(const std::vector<int>& keep) const {
        return HermitianMatrix(m_.submatrix(keep));
    }

    friend HermitianMatrix operator+(const HermitianMatrix& a,
                                     const HermitianMatrix& b) {
        return HermitianMatrix(a.m_ + b.m_);
    }
    friend HermitianMatrix operator-(const HermitianMatrix& a,
                                     const HermitianMatrix& b) {
        return HermitianMatrix(a.m_ - b.m_);
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
        return HermitianMatrix(cxd(s, 0.0) * a.m_);
    }

  private:
    ComplexMatrix m_;
};

}  // namespace normlab
