#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "qbound/errors.hpp"

namespace qbound {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

/// Small square real matrix, n <= 3. Enough for Gram matrices and the
/// ellipsoid bookkeeping; not a general linear-algebra type.
struct RealMatrix {
    int n = 0;
    std::array<std::array<double, 3>, 3> a{};

    static RealMatrix zero(int n) {
        RealMatrix m;
        m.n = n;
        return m;
    }
    static RealMatrix identity(int n) {
        RealMatrix m = zero(n);
        for (int i = 0; i < n; ++i) m.a[i][i] = 1.0;
        return m;
    }

    double& operator()(int r, int c) { return a[r][c]; }
    double operator()(int r, int c) const { return a[r][c]; }

    RealMatrix transposed() const {
        RealMatrix m = zero(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    friend RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
        RealMatrix m = zero(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k)
                for (int j = 0; j < x.n; ++j) m(i, j) += x(i, k) * y(k, j);
        return m;
    }

    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(n, 0.0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    double det() const {
        if (n == 1) return a[0][0];
        if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    }

    RealMatrix inverse() const {
        RealMatrix m = zero(n);
        const double d = det();
        if (n == 1) {
            m(0, 0) = 1.0 / d;
        } else if (n == 2) {
            m(0, 0) = a[1][1] / d;
            m(1, 1) = a[0][0] / d;
            m(0, 1) = -a[0][1] / d;
            m(1, 0) = -a[1][0] / d;
        } else {
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    const int r1 = (r + 1) % 3, r2 = (r + 2) % 3;
                    const int c1 = (c + 1) % 3, c2 = (c + 2) % 3;
                    // adjugate: cofactor transpose
                    m(c, r) = (a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]) / d;
                }
        }
        return m;
    }
};

inline RealMatrix gram_matrix(const std::vector<Vec3>& v) {
    RealMatrix g = RealMatrix::zero(int(v.size()));
    for (int r = 0; r < g.n; ++r)
        for (int c = 0; c < g.n; ++c) g(r, c) = dot(v[r], v[c]);
    return g;
}

/// Result of orthonormalizing 2 or 3 vectors. Row i of `m` holds the
/// coordinates of input i in the orthonormal frame, so m is lower triangular
/// and m * m^T reproduces the Gram matrix of the inputs.
struct GramSchmidtResult {
    std::vector<Vec3> orthonormal;
    RealMatrix m;
    RealMatrix m_inverse;
};

inline GramSchmidtResult gram_schmidt(const std::vector<Vec3>& inputs) {
    const int n = int(inputs.size());
    if (n < 2 || n > 3) throw DimensionMismatch("gram_schmidt expects 2 or 3 vectors");
    if (gram_matrix(inputs).det() <= 1e-10)
        throw LinearlyDependent("gram_schmidt: Gram determinant at or below 1e-10");

    GramSchmidtResult out;
    out.m = RealMatrix::zero(n);
    for (int i = 0; i < n; ++i) {
        Vec3 w = inputs[i];
        for (int k = 0; k < i; ++k) {
            const double proj = dot(inputs[i], out.orthonormal[k]);
            w = w - proj * out.orthonormal[k];
            out.m(i, k) = proj;
        }
        const double len = norm(w);
        out.orthonormal.push_back((1.0 / len) * w);
        out.m(i, i) = len;
    }

    // Forward substitution for the lower-triangular inverse.
    out.m_inverse = RealMatrix::zero(n);
    for (int c = 0; c < n; ++c) {
        out.m_inverse(c, c) = 1.0 / out.m(c, c);
        for (int r = c + 1; r < n; ++r) {
            double s = 0.0;
            for (int k = c; k < r; ++k) s += out.m(r, k) * out.m_inverse(k, c);
            out.m_inverse(r, c) = -s / out.m(r, r);
        }
    }
    return out;
}

} // namespace qbound
