#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/errors.hpp"

namespace qbound {

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending;
/// column k of `eigenvectors` pairs with eigenvalues[k].
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const {
        const int d = eigenvectors.dim();
        ComplexMatrix m(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                cplx s = 0.0;
                for (int k = 0; k < d; ++k)
                    s += eigenvectors(r, k) * eigenvalues[k] * std::conj(eigenvectors(c, k));
                m(r, c) = s;
            }
        return m;
    }

    std::vector<cplx> eigenvector(int k) const {
        std::vector<cplx> v(eigenvectors.dim());
        for (int r = 0; r < eigenvectors.dim(); ++r) v[r] = eigenvectors(r, k);
        return v;
    }
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||H||_F. Adequate and robust for the dimensions (<= 16) used here.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& h_in, double herm_tol = 1e-12) {
    const int d = h_in.dim();
    if (d > kMaxDim) throw DimensionTooLarge("hermitian_eig supports dim <= 16");
    if (h_in.hermiticity_residual() > herm_tol)
        throw NonHermitianInput("hermitian_eig: input violates Hermiticity tolerance");

    // Work on the Hermitized matrix so roundoff in the input cannot skew results.
    ComplexMatrix h(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) h(r, c) = 0.5 * (h_in(r, c) + std::conj(h_in(c, r)));

    ComplexMatrix v = ComplexMatrix::identity(d);
    const double target = 1e-13 * std::max(h.frobenius_norm(), 1e-300);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int r = 0; r < d; ++r)
            for (int c = r + 1; c < d; ++c) s += 2.0 * std::norm(h(r, c));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx apq = h(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const cplx u = apq / r; // phase so the 2x2 subproblem is real
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // Annihilation condition for the rotated (p,q) entry:
                // (app - aqq) s c + r (c^2 - s^2) = 0; take the small root
                // t = -sign(tau) / (|tau| + sqrt(tau^2 + 1)).
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns p,q of H and V: right-multiply by J with
                // J(p,p)=c, J(q,q)=c, J(p,q)=s*u, J(q,p)=-s*conj(u).
                for (int i = 0; i < d; ++i) {
                    const cplx hip = h(i, p), hiq = h(i, q);
                    h(i, p) = c * hip - s * std::conj(u) * hiq;
                    h(i, q) = s * u * hip + c * hiq;
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(u) * viq;
                    v(i, q) = s * u * vip + c * viq;
                }
                // Rows p,q: left-multiply by J^dagger.
                for (int j = 0; j < d; ++j) {
                    const cplx hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = c * hpj - s * u * hqj;
                    h(q, j) = s * std::conj(u) * hpj + c * hqj;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(d);
    for (int i = 0; i < d; ++i) diag[i] = h(i, i).real();
    std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });

    EigenDecomposition out{std::vector<double>(d), ComplexMatrix(d)};
    for (int k = 0; k < d; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (int r = 0; r < d; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

/// Largest eigenvalue of a Hermitian matrix.
inline double max_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eig(h).eigenvalues.back();
}

inline double min_eigenvalue(const ComplexMatrix& h) {
    return hermitian_eig(h).eigenvalues.front();
}

} // namespace qbound
