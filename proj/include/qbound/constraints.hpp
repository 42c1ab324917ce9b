#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/density_state.hpp"
#include "qbound/errors.hpp"
#include "qbound/mub.hpp"
#include "qbound/operators.hpp"

namespace qbound {

/// moments[m-1] = tr(rho^m) for m = 1..dim.
struct MomentVector {
    int dim = 0;
    std::vector<double> moments;

    double operator[](int m) const { return moments[m - 1]; } // 1-based like tr(rho^m)
};

inline MomentVector moments_of(const DensityState& rho) {
    const int d = rho.dim();
    MomentVector mv{d, std::vector<double>(d)};
    ComplexMatrix pw = rho.matrix();
    for (int m = 1; m <= d; ++m) {
        if (m > 1) pw = pw * rho.matrix();
        const cplx t = pw.trace();
        if (std::abs(t.imag()) > 1e-10)
            throw NonRealMoment("tr(rho^" + std::to_string(m) + ") has imaginary part " +
                                std::to_string(t.imag()));
        mv.moments[m - 1] = t.real();
    }
    return mv;
}

/// Outcome of the S_n positivity checks (and, in validate_state, of the
/// Hermiticity and trace conditions as well).
struct ConstraintReport {
    std::vector<double> s_values;     // S_1..S_dim
    std::vector<bool> satisfied;      // per n, S_n >= -tolerance
    double tolerance = 1e-9;
    double hermiticity_residual = 0.0;
    double trace_residual = 0.0;
    bool hermitian = true;
    bool unit_trace = true;
    bool positive = true;

    bool valid() const { return hermitian && unit_trace && positive; }

    std::string failure() const {
        if (!hermitian) return "hermiticity";
        if (!unit_trace) return "trace";
        if (!positive) return "positivity";
        return "";
    }
};

/// Newton recursion S_n = (1/n) sum_{m=1..n} (-1)^{m-1} tr(rho^m) S_{n-m},
/// S_0 = 1. S_n equals the n-th elementary symmetric polynomial of the
/// eigenvalues; nonnegativity of all S_n is equivalent to positivity.
inline ConstraintReport newton_s(const MomentVector& mv, double tol = 1e-9) {
    const int d = mv.dim;
    std::vector<double> s(d + 1);
    s[0] = 1.0;
    for (int n = 1; n <= d; ++n) {
        double acc = 0.0;
        double sign = 1.0;
        for (int m = 1; m <= n; ++m) {
            acc += sign * mv.moments[m - 1] * s[n - m];
            sign = -sign;
        }
        s[n] = acc / n;
    }
    ConstraintReport rep;
    rep.tolerance = tol;
    rep.s_values.assign(s.begin() + 1, s.end());
    rep.satisfied.resize(d);
    for (int n = 0; n < d; ++n) {
        rep.satisfied[n] = rep.s_values[n] >= -tol;
        if (!rep.satisfied[n]) rep.positive = false;
    }
    return rep;
}

/// Full density-operator check: Hermiticity, unit trace, and S_n >= -tol.
/// Reports which condition failed; never throws on finite input.
inline ConstraintReport validate_state(const DensityState& rho, double tol = 1e-9) {
    const double herm = rho.matrix().hermiticity_residual();
    if (herm > 1e-10) {
        ConstraintReport rep;
        rep.tolerance = tol;
        rep.hermiticity_residual = herm;
        rep.hermitian = false;
        return rep;
    }
    // Moments of the Hermitized matrix so tiny residue cannot trip the
    // NonRealMoment guard.
    ComplexMatrix h(rho.dim());
    for (int r = 0; r < rho.dim(); ++r)
        for (int c = 0; c < rho.dim(); ++c)
            h(r, c) = 0.5 * (rho.matrix()(r, c) + std::conj(rho.matrix()(c, r)));
    ConstraintReport rep = newton_s(moments_of(DensityState(h)), tol);
    rep.hermiticity_residual = herm;
    rep.trace_residual = std::abs(h.trace().real() - 1.0);
    rep.unit_trace = rep.trace_residual <= 1e-9;
    return rep;
}

/// The closed-form constraint expressions 1 - tr(rho^2),
/// 1 - 3 tr(rho^2) + 2 tr(rho^3), and
/// 1 - 6 tr(rho^2) + 8 tr(rho^3) + 3 tr(rho^2)^2 - 6 tr(rho^4), evaluated as
/// written. For unit-trace input these equal n! S_n. Entries beyond the
/// available moments (dim < 4) are omitted.
inline std::vector<double> explicit_s234(const MomentVector& mv) {
    std::vector<double> out;
    if (mv.dim >= 2) out.push_back(1.0 - mv[2]);
    if (mv.dim >= 3) out.push_back(1.0 - 3.0 * mv[2] + 2.0 * mv[3]);
    if (mv.dim >= 4) out.push_back(1.0 - 6.0 * mv[2] + 8.0 * mv[3] + 3.0 * mv[2] * mv[2] - 6.0 * mv[4]);
    return out;
}

/// tr(rho), tr(rho^2), tr(rho^3) for a qutrit directly from the standard-basis
/// coefficient grid r_jk = <j|rho|k>.
inline std::array<double, 3> qutrit_moments_standard(const ComplexMatrix& r) {
    if (r.dim() != 3) throw DimensionMismatch("qutrit_moments_standard expects a 3x3 grid");
    if (r.hermiticity_residual() > 1e-10)
        throw HermiticityViolation("coefficient grid violates r_jk = conj(r_kj)");
    const double r00 = r(0, 0).real(), r11 = r(1, 1).real(), r22 = r(2, 2).real();
    const double n01 = std::norm(r(0, 1)), n02 = std::norm(r(0, 2)), n12 = std::norm(r(1, 2));
    const double t1 = r00 + r11 + r22;
    const double t2 = r00 * r00 + r11 * r11 + r22 * r22 + 2.0 * (n01 + n02 + n12);
    const cplx cyc = r(0, 1) * r(1, 2) * r(2, 0);
    const double t3 = r00 * r00 * r00 + r11 * r11 * r11 + r22 * r22 * r22 +
                      3.0 * r00 * (n01 + n02) + 3.0 * r11 * (n01 + n12) + 3.0 * r22 * (n02 + n12) +
                      3.0 * (cyc + std::conj(cyc)).real();
    return {t1, t2, t3};
}

namespace detail {
inline cplx weyl_expectation(const std::map<WeylLabel, cplx>& e, int x, int z, int d) {
    int xr = x % d;
    if (xr < 0) xr += d;
    int zr = z % d;
    if (zr < 0) zr += d;
    const auto it = e.find({xr, zr});
    if (it == e.end())
        throw MissingLabel("missing Weyl expectation X^" + std::to_string(xr) + "Z^" + std::to_string(zr));
    return it->second;
}
} // namespace detail

/// tr(rho^2) = (1/d) sum_xz |<X^x Z^z>|^2; the quadratic constraint is
/// weyl_tr2 <= 1.
inline double weyl_tr2(const std::map<WeylLabel, cplx>& expectations, int dim) {
    double s = 0.0;
    for (int x = 0; x < dim; ++x)
        for (int z = 0; z < dim; ++z) s += std::norm(detail::weyl_expectation(expectations, x, z, dim));
    return s / dim;
}

/// tr(rho^3) of a qutrit from the nine Weyl expectation values, evaluated
/// term-for-term in the cubic expansion (omega = exp(i 2 pi / 3)).
inline cplx qutrit_tr3_weyl(const std::map<WeylLabel, cplx>& expectations) {
    const int d = 3;
    auto e = [&](int x, int z) { return detail::weyl_expectation(expectations, x, z, d); };
    if (std::abs(e(0, 0) - cplx(1.0)) > 1e-9)
        throw NotNormalized("qutrit_tr3_weyl: <X^0 Z^0> must be 1");
    const cplx w = detail::root_of_unity(1, 3);
    auto cube = [](cplx v) { return v * v * v; };

    cplx t = 1.0;
    t += cube(e(1, 0)) + cube(e(2, 0)) + cube(e(1, 1)) + cube(e(2, 2));
    t += cube(e(1, 2)) + cube(e(2, 1)) + cube(e(0, 1)) + cube(e(0, 2));
    t += 6.0 * (std::norm(e(1, 0)) + std::norm(e(1, 1)) + std::norm(e(1, 2)) + std::norm(e(0, 1)));
    t -= 3.0 * (e(1, 0) * e(1, 1) * e(1, 2) + e(2, 0) * e(2, 1) * e(2, 2) +
                e(0, 1) * e(1, 1) * e(2, 1) + e(0, 2) * e(1, 2) * e(2, 2) +
                w * e(0, 1) * e(2, 0) * e(1, 2) + w * e(0, 2) * e(1, 0) * e(2, 1) +
                w * w * e(0, 1) * e(1, 0) * e(2, 2) + w * w * e(0, 2) * e(2, 0) * e(1, 1));
    return t / 9.0;
}

/// Weyl expectation map of a state, for feeding the expressions above.
inline std::map<WeylLabel, cplx> weyl_expectations(const DensityState& rho) {
    const int d = rho.dim();
    std::map<WeylLabel, cplx> out;
    for (int x = 0; x < d; ++x)
        for (int z = 0; z < d; ++z) {
            const ComplexMatrix w = weyl(x, z, d);
            cplx v = 0.0;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) v += rho.matrix()(r, c) * w(c, r);
            out[{x, z}] = v;
        }
    return out;
}

/// sum_z sum_j (p_j^(z))^2 + sum_j p_j^2 over the d+1 MUB probability
/// vectors; the quadratic constraint is <= 2, with equality exactly for
/// probabilities of a pure state.
inline double mub_quadratic(const std::vector<std::vector<double>>& prob_vectors) {
    double s = 0.0;
    for (const auto& p : prob_vectors) {
        double sum = 0.0;
        for (double v : p) {
            if (v < -1e-12) throw NotNormalized("mub_quadratic: negative probability entry");
            sum += v;
            s += v * v;
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw NotNormalized("mub_quadratic: probability vector does not sum to 1");
    }
    return s;
}

/// tr(rho), tr(rho^2), tr(rho^3) of a spin-1 state from the nine expectation
/// values <A_1>..<A_9> (valid on actual states, where <A_7+A_8+A_9> = 2).
inline std::array<double, 3> spin1_moments(const std::array<double, 9>& e) {
    const double jx = e[0], jy = e[1], jz = e[2];
    const double kyz = e[3], kzx = e[4], kxy = e[5];
    const double x2 = e[6], y2 = e[7], z2 = e[8];
    const double t1 = 0.5 * (x2 + y2 + z2);
    const double t2 = -1.0 + x2 * x2 + y2 * y2 + z2 * z2 +
                      0.5 * (jx * jx + jy * jy + jz * jz + kxy * kxy + kyz * kyz + kzx * kzx);
    const double t3 = 1.0 - 3.0 * x2 * y2 * z2 +
                      0.75 * ((jx * jx + kyz * kyz) * x2 + (jy * jy + kzx * kzx) * y2 +
                              (jz * jz + kxy * kxy) * z2 - kxy * kyz * kzx + jx * kxy * jy +
                              jy * kyz * jz + jz * kzx * jx);
    return {t1, t2, t3};
}

} // namespace qbound
