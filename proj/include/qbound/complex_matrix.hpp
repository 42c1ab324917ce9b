#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "qbound/errors.hpp"

namespace qbound {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 16;

/// Dense row-major complex matrix for dimensions 2..16.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int dim) : dim_(checked_dim(dim)), a_(size_t(dim) * dim) {}

    ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(checked_dim(dim)), a_(std::move(entries)) {
        if (a_.size() != size_t(dim_) * dim_)
            throw DimensionMismatch("entry count does not match dim*dim");
    }

    ComplexMatrix(int dim, std::initializer_list<cplx> entries)
        : ComplexMatrix(dim, std::vector<cplx>(entries)) {}

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return a_[size_t(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[size_t(r) * dim_ + c]; }

    const std::vector<cplx>& entries() const { return a_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// max_jk |a_jk - conj(a_kj)|
    double hermiticity_residual() const {
        double m = 0.0;
        for (int r = 0; r < dim_; ++r)
            for (int c = r; c < dim_; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    bool is_hermitian(double tol = 1e-12) const { return hermiticity_residual() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (cplx& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int d = a.dim_;
        ComplexMatrix c(d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    /// y = M x
    std::vector<cplx> apply(const std::vector<cplx>& x) const {
        if (int(x.size()) != dim_) throw DimensionMismatch("vector length does not match matrix dim");
        std::vector<cplx> y(dim_);
        for (int i = 0; i < dim_; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    static int checked_dim(int dim) {
        if (dim < 1) throw DimensionMismatch("matrix dimension must be positive");
        if (dim > kMaxDim) throw DimensionTooLarge("matrix dimension exceeds 16");
        return dim;
    }
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("matrix dimensions differ");
    }

    int dim_ = 0;
    std::vector<cplx> a_;
};

inline ComplexMatrix matrix_power(const ComplexMatrix& m, int power) {
    if (power < 1 || power > kMaxDim) throw DimensionTooLarge("matrix power must be in 1..16");
    ComplexMatrix r = m;
    for (int i = 1; i < power; ++i) r = r * m;
    return r;
}

/// tr(M^power) by repeated multiplication.
inline cplx trace_power(const ComplexMatrix& m, int power) {
    return matrix_power(m, power).trace();
}

/// Hilbert-Schmidt inner product tr(A^dagger B).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
    cplx s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) s += std::conj(a(r, c)) * b(r, c);
    return s;
}

} // namespace qbound
