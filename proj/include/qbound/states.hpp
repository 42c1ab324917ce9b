#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/density_state.hpp"
#include "qbound/errors.hpp"
#include "qbound/operators.hpp"

namespace qbound {

/// Pure-state parametrization by 2(d-1) angles: thetas[l] in [0, pi/2] for
/// l = 0..d-2 and phis[l'-1] in [0, 2 pi) for l' = 1..d-1. Phis are reduced
/// mod 2 pi on construction (the parametrization is periodic); thetas outside
/// their range are rejected.
struct PureStateAngles {
    int dim = 0;
    std::vector<double> thetas;
    std::vector<double> phis;

    PureStateAngles(int dim_, std::vector<double> thetas_, std::vector<double> phis_)
        : dim(dim_), thetas(std::move(thetas_)), phis(std::move(phis_)) {
        if (int(thetas.size()) != dim - 1 || int(phis.size()) != dim - 1)
            throw DimensionMismatch("PureStateAngles: need dim-1 thetas and dim-1 phis");
        const double two_pi = 2.0 * std::numbers::pi;
        for (double t : thetas)
            if (t < 0.0 || t > 0.5 * std::numbers::pi + 1e-15)
                throw AngleOutOfRange("theta outside [0, pi/2]");
        for (double& p : phis) {
            p = std::fmod(p, two_pi);
            if (p < 0.0) p += two_pi;
        }
    }
};

/// The ket (cos t0, sin t0 cos t1 e^{i phi_1}, ..., sin t0 ... sin t_{d-2}
/// e^{i phi_{d-1}}); unit norm, |0> amplitude real nonnegative.
inline std::vector<cplx> ket_from_angles(const PureStateAngles& angles) {
    const int d = angles.dim;
    std::vector<cplx> ket(d);
    double sines = 1.0;
    for (int l = 0; l < d - 1; ++l) {
        const double amp = sines * std::cos(angles.thetas[l]);
        ket[l] = (l == 0) ? cplx(amp) : std::polar(amp, angles.phis[l - 1]);
        sines *= std::sin(angles.thetas[l]);
    }
    ket[d - 1] = std::polar(sines, angles.phis[d - 2]);
    return ket;
}

/// Angular momentum coherent state |alpha, beta> for spin j = two_j / 2,
/// in the J_z eigenbasis ordered m = j..-j. Component for m:
/// sqrt(C(2j, j+m)) cos(alpha/2)^{j+m} sin(alpha/2)^{j-m} e^{-i m beta}.
inline std::vector<cplx> coherent_ket(int two_j, double alpha, double beta) {
    if (alpha < 0.0 || alpha > std::numbers::pi + 1e-15)
        throw AngleOutOfRange("coherent_ket: alpha outside [0, pi]");
    const double two_pi = 2.0 * std::numbers::pi;
    beta = std::fmod(beta, two_pi);
    if (beta < 0.0) beta += two_pi;

    const int d = two_j + 1;
    const double c = std::cos(0.5 * alpha), s = std::sin(0.5 * alpha);
    std::vector<cplx> ket(d);
    double binom = 1.0; // C(2j, j+m) walked down from m = j
    for (int k = 0; k < d; ++k) {
        const int j_plus_m = two_j - k; // row k holds m = j - k
        const double m = 0.5 * two_j - k;
        ket[k] = std::polar(std::sqrt(binom) * std::pow(c, j_plus_m) * std::pow(s, two_j - j_plus_m),
                            -m * beta);
        binom *= double(j_plus_m) / double(two_j - j_plus_m + 1);
    }
    return ket;
}

/// Point in the expectation-value space of an operator set.
struct ExpectationPoint {
    std::string set_label;
    std::vector<double> values;
};

/// values[i] = Re tr(rho A_i). For operators flagged Hermitian the imaginary
/// residue must stay below 1e-10.
inline ExpectationPoint expectations(const DensityState& rho, const OperatorSet& ops) {
    if (rho.dim() != ops.dim()) throw DimensionMismatch("state and operator-set dimensions differ");
    ExpectationPoint pt{ops.label(), std::vector<double>(ops.size())};
    for (int i = 0; i < ops.size(); ++i) {
        cplx v = 0.0;
        const ComplexMatrix& a = ops[i].matrix;
        for (int r = 0; r < rho.dim(); ++r)
            for (int c = 0; c < rho.dim(); ++c) v += rho.matrix()(r, c) * a(c, r);
        if (ops[i].hermitian && std::abs(v.imag()) > 1e-10)
            throw NonRealExpectation("non-real expectation for Hermitian operator " + ops[i].label);
        pt.values[i] = v.real();
    }
    return pt;
}

/// <psi|A|psi> for all operators of a set, without forming the outer product.
inline std::vector<double> ket_expectations(const std::vector<cplx>& ket, const OperatorSet& ops) {
    if (int(ket.size()) != ops.dim()) throw DimensionMismatch("ket and operator-set dimensions differ");
    std::vector<double> out(ops.size());
    for (int i = 0; i < ops.size(); ++i) {
        const ComplexMatrix& a = ops[i].matrix;
        cplx v = 0.0;
        for (int r = 0; r < ops.dim(); ++r) {
            cplx row = 0.0;
            for (int c = 0; c < ops.dim(); ++c) row += a(r, c) * ket[c];
            v += std::conj(ket[r]) * row;
        }
        out[i] = v.real();
    }
    return out;
}

/// Closed forms of <A_1>..<A_9> on pure qutrit states.
inline std::array<double, 9> spin1_pure_expectations(const PureStateAngles& angles) {
    if (angles.dim != 3) throw DimensionMismatch("spin1_pure_expectations needs dim-3 angles");
    const double t0 = angles.thetas[0], t1 = angles.thetas[1];
    const double p1 = angles.phis[0], p2 = angles.phis[1];
    const double s2t0 = std::sin(2.0 * t0), st0 = std::sin(t0), ct0 = std::cos(t0);
    const double s2t1 = std::sin(2.0 * t1), st1 = std::sin(t1), ct1 = std::cos(t1);
    return {
        s2t0 * ct1 * std::sin(p1),
        s2t0 * st1 * std::sin(p2),
        -st0 * st0 * s2t1 * std::sin(p1 - p2),
        s2t0 * ct1 * std::cos(p1),
        -s2t0 * st1 * std::cos(p2),
        st0 * st0 * s2t1 * std::cos(p1 - p2),
        ct0 * ct0 + st0 * st0 * ct1 * ct1,
        ct0 * ct0 + st0 * st0 * st1 * st1,
        st0 * st0,
    };
}

/// <J_x, J_y, J_z> of a coherent state: j (sin a cos b, sin a sin b, cos a).
inline std::array<double, 3> coherent_spin_expectations(int two_j, double alpha, double beta) {
    const double j = 0.5 * two_j;
    return {j * std::sin(alpha) * std::cos(beta), j * std::sin(alpha) * std::sin(beta),
            j * std::cos(alpha)};
}

} // namespace qbound
