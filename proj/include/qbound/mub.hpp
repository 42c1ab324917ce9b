#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/density_state.hpp"
#include "qbound/errors.hpp"
#include "qbound/operators.hpp"

namespace qbound {

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

/// One orthonormal basis of the MUB family: kets[j] is the eigenvector of
/// X Z^z with eigenvalue eigenvalues[j].
struct MubBasis {
    std::string label;
    std::vector<std::vector<cplx>> kets;
    std::vector<cplx> eigenvalues;
};

/// d + 1 mutually unbiased bases for prime d: the eigenbases of X Z^z for
/// z = 0..d-1 followed by the computational basis (the Z eigenbasis).
struct MubFamily {
    int dim = 0;
    std::vector<MubBasis> bases;

    /// Probability vectors of a state in each basis, ordered as `bases`.
    std::vector<std::vector<double>> probabilities(const DensityState& rho) const {
        std::vector<std::vector<double>> out;
        for (const MubBasis& b : bases) {
            std::vector<double> p(dim);
            for (int j = 0; j < dim; ++j) {
                cplx v = 0.0;
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c)
                        v += std::conj(b.kets[j][r]) * rho.matrix()(r, c) * b.kets[j][c];
                p[j] = v.real();
            }
            out.push_back(std::move(p));
        }
        return out;
    }

    /// Largest deviation of any cross-basis |<u|v>|^2 from 1/d.
    double unbiasedness_deviation() const {
        double dev = 0.0;
        for (size_t a = 0; a < bases.size(); ++a)
            for (size_t b = a + 1; b < bases.size(); ++b)
                for (int ja = 0; ja < dim; ++ja)
                    for (int jb = 0; jb < dim; ++jb) {
                        cplx ov = 0.0;
                        for (int k = 0; k < dim; ++k)
                            ov += std::conj(bases[a].kets[ja][k]) * bases[b].kets[jb][k];
                        dev = std::max(dev, std::abs(std::norm(ov) - 1.0 / dim));
                    }
        return dev;
    }
};

/// Eigenbases of X Z^z for prime d.
///
/// From the shift/phase action, the eigenvector for eigenvalue lambda has
/// components psi_k = lambda^{-k} omega^{z k(k-1)/2} / sqrt(d). The wrap-around
/// consistency fixes lambda^d = omega^{z d(d-1)/2}: for odd d the eigenvalues
/// are exactly omega^j, while for d = 2 the z = 1 operator (XZ = -iY) has
/// eigenvalues i * (+/-1), handled by the extra phase eta = i^z. Component 0
/// comes out as 1/sqrt(d), which already fixes the ket phase convention
/// (first nonzero component real positive).
inline MubFamily mub_family(int dim) {
    if (!is_prime(dim)) throw NotPrime("mub_family: dimension must be prime");
    if (dim > kMaxDim) throw DimensionTooLarge("mub_family: dimension exceeds 16");

    const double step = 2.0 * std::numbers::pi / dim;
    MubFamily fam;
    fam.dim = dim;
    for (int z = 0; z < dim; ++z) {
        MubBasis basis;
        basis.label = "XZ^" + std::to_string(z);
        const double eta_angle = (dim == 2) ? 0.5 * std::numbers::pi * z : 0.0;
        for (int j = 0; j < dim; ++j) {
            const double lambda_angle = eta_angle + step * j;
            std::vector<cplx> ket(dim);
            for (int k = 0; k < dim; ++k) {
                const double angle = -lambda_angle * k + step * (0.5 * z * k * (k - 1));
                ket[k] = std::polar(1.0 / std::sqrt(double(dim)), angle);
            }
            basis.kets.push_back(std::move(ket));
            basis.eigenvalues.push_back(std::polar(1.0, lambda_angle));
        }
        fam.bases.push_back(std::move(basis));
    }

    MubBasis comp;
    comp.label = "computational";
    for (int j = 0; j < dim; ++j) {
        std::vector<cplx> ket(dim);
        ket[j] = 1.0;
        comp.kets.push_back(std::move(ket));
        comp.eigenvalues.push_back(detail::root_of_unity(j, dim)); // Z eigenvalue
    }
    fam.bases.push_back(std::move(comp));
    return fam;
}

/// Spectral reconstruction of X^k Z^{k z} from the z-th MUB basis:
/// (X Z^z)^k = omega^{k(k-1)z/2} X^k Z^{kz} together with
/// (X Z^z)^k = sum_j lambda_j^k |z,j><z,j|. k(k-1) is even, so the
/// prefactor is a plain d-th root of unity.
inline ComplexMatrix weyl_from_mub(const MubFamily& fam, int k, int z) {
    const int d = fam.dim;
    const MubBasis& basis = fam.bases[z];
    ComplexMatrix m(d);
    for (int j = 0; j < d; ++j) {
        const cplx lk = std::pow(basis.eigenvalues[j], k);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) += lk * basis.kets[j][r] * std::conj(basis.kets[j][c]);
    }
    return detail::root_of_unity(-(k * (k - 1) / 2) * z, d) * m;
}

} // namespace qbound
