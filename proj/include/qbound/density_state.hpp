#pragma once

#include <utility>
#include <vector>

#include "qbound/complex_matrix.hpp"

namespace qbound {

/// Candidate density operator. Carries the matrix only; whether it actually
/// satisfies Hermiticity, unit trace, and positivity is the job of
/// constraints::validate_state, so construction performs no checks.
class DensityState {
public:
    explicit DensityState(ComplexMatrix m) : m_(std::move(m)) {}

    int dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

inline DensityState maximally_mixed(int dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= cplx(1.0 / dim, 0.0);
    return DensityState(std::move(m));
}

/// |ket><ket| (the ket need not be normalized; it is normalized here).
inline DensityState outer_product(const std::vector<cplx>& ket) {
    double n2 = 0.0;
    for (const cplx& c : ket) n2 += std::norm(c);
    ComplexMatrix m(int(ket.size()));
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) m(r, c) = ket[r] * std::conj(ket[c]) / n2;
    return DensityState(std::move(m));
}

} // namespace qbound
