#pragma once

#include <cstdint>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/density_state.hpp"
#include "qbound/errors.hpp"
#include "qbound/rng.hpp"

namespace qbound {

/// Haar-uniform random ket: complex standard-normal components, normalized.
inline std::vector<cplx> random_ket(int dim, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> k(dim);
    double n2 = 0.0;
    for (cplx& c : k) {
        c = rng.cnormal();
        n2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& c : k) c *= inv;
    return k;
}

/// Random density operator of the given rank.
/// rank 1: projector onto a Haar-uniform ket. rank r: normalized G G^dagger
/// with G a dim x rank complex Ginibre matrix.
inline DensityState random_state(int dim, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim) throw DimensionMismatch("random_state: rank must be in 1..dim");
    if (rank == 1) return outer_product(random_ket(dim, seed));
    Rng rng(seed);
    std::vector<std::vector<cplx>> g(dim, std::vector<cplx>(rank));
    for (auto& row : g)
        for (cplx& c : row) c = rng.cnormal();
    ComplexMatrix m(dim);
    double tr = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            cplx s = 0.0;
            for (int k = 0; k < rank; ++k) s += g[r][k] * std::conj(g[c][k]);
            m(r, c) = s;
            if (r == c) tr += s.real();
        }
    m *= cplx(1.0 / tr, 0.0);
    return DensityState(std::move(m));
}

/// Random Hermitian matrix with Gaussian entries (GUE-like, unnormalized).
inline ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = rng.normal();
        for (int c = r + 1; c < dim; ++c) {
            const cplx v = rng.cnormal();
            m(r, c) = v;
            m(c, r) = std::conj(v);
        }
    }
    return m;
}

/// Random Hermitian with trace rescaled/shifted to 1; generally indefinite.
inline DensityState random_unit_trace_hermitian(int dim, std::uint64_t seed) {
    ComplexMatrix m = random_hermitian(dim, seed);
    const double tr = m.trace().real();
    const double shift = (1.0 - tr) / dim;
    for (int i = 0; i < dim; ++i) m(i, i) += shift;
    return DensityState(std::move(m));
}

} // namespace qbound
