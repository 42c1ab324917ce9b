#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qbound/catalog.hpp"
#include "qbound/errors.hpp"
#include "qbound/geometry.hpp"
#include "qbound/mub.hpp"
#include "qbound/operators.hpp"

namespace qbound {

/// An operator set resolved from a CLI selector, with a closed-form
/// membership test where one exists (used to cross-check the generic
/// support-function path).
struct ResolvedSet {
    OperatorSet ops;
    std::function<bool(const std::vector<double>&)> closed_form_inside; // may be empty
    std::string description;
};

/// Options consumed by the selector. Only the fields a given selector needs
/// are read.
struct SetOptions {
    int two_j = 2;
    int dim = 3;
    std::vector<double> dots; // a.b, a.c, b.c for qubit-axes
};

inline std::vector<Vec3> axes_from_dots(double dab, double dac, double dbc) {
    const Vec3 a{1.0, 0.0, 0.0};
    if (std::abs(dab) >= 1.0) throw LinearlyDependent("qubit-axes: |a.b| must be < 1");
    const double s = std::sqrt(1.0 - dab * dab);
    const Vec3 b{dab, s, 0.0};
    const double c2 = (dbc - dab * dac) / s;
    const double rest = 1.0 - dac * dac - c2 * c2;
    if (rest <= 1e-12) throw LinearlyDependent("qubit-axes: dot products admit no independent third axis");
    return {a, b, {dac, c2, std::sqrt(rest)}};
}

inline ResolvedSet resolve_named_set(const std::string& selector, const SetOptions& opt = {}) {
    if (selector == "fig1") {
        const double t = 169.0 / 675.0;
        TwoProjectorRegion region(t, 3);
        return {fig1_set(),
                [region](const std::vector<double>& p) {
                    if (p.size() != 2) throw ArityMismatch("fig1 point must have 2 entries");
                    return region.contains(p[0], p[1], 1e-9);
                },
                "two rank-1 qutrit projectors with tr(PQ) = 169/675"};
    }
    if (selector == "spin") {
        const double j = 0.5 * opt.two_j;
        return {spin_operators(opt.two_j),
                [j](const std::vector<double>& e) {
                    if (e.size() != 3) throw ArityMismatch("spin point must have 3 entries");
                    return e[0] * e[0] + e[1] * e[1] + e[2] * e[2] <= j * j + 1e-9;
                },
                "angular momentum operators J_x, J_y, J_z"};
    }
    if (selector == "spin1-nine") return {spin1_nine_set(), {}, "nine spin-1 observables A_1..A_9"};
    if (selector == "spin1-six") return {spin1_six_set(), {}, "first six spin-1 observables"};
    if (selector == "sic") {
        const SicPovm sic = sic_qubit(SicVariant::gram);
        return {sic.projectors,
                [](const std::vector<double>& p) {
                    if (p.size() != 4) throw ArityMismatch("sic point must have 4 entries");
                    double sum = 0.0, q = 0.0;
                    for (double v : p) {
                        sum += v;
                        q += (4.0 * v - 1.0) * (4.0 * v - 1.0);
                    }
                    return std::abs(sum - 1.0) <= 1e-9 && q <= 4.0 / 3.0 + 1e-9;
                },
                "qubit SIC-POVM elements Pi_1..Pi_4"};
    }
    if (selector == "sic-wh")
        return {sic_qubit(SicVariant::weyl_heisenberg).projectors, {},
                "Weyl-Heisenberg covariant SIC-POVM elements"};
    if (selector == "qubit-axes") {
        if (opt.dots.size() != 3)
            throw ArityMismatch("qubit-axes needs --dots dab,dac,dbc");
        const std::vector<Vec3> axes = axes_from_dots(opt.dots[0], opt.dots[1], opt.dots[2]);
        OperatorSet set(2, "qubit-axes");
        const char* labels[] = {"A", "B", "C"};
        for (int i = 0; i < 3; ++i) set.add(labels[i], axis_operator(axes[i]));
        const QuadraticRegion region = gram_region(axes);
        return {std::move(set),
                [region](const std::vector<double>& e) {
                    if (e.size() != 3) throw ArityMismatch("qubit-axes point must have 3 entries");
                    return region.contains(e, 1e-9);
                },
                "three qubit axis observables"};
    }
    if (selector == "weyl") {
        OperatorSet set(opt.dim, "weyl dim=" + std::to_string(opt.dim));
        for (int x = 0; x < opt.dim; ++x)
            for (int z = 0; z < opt.dim; ++z)
                set.add(weyl_label_string({x, z}), weyl(x, z, opt.dim),
                        /*hermitian=*/x == 0 && z == 0);
        return {std::move(set), {}, "unitary operator basis X^x Z^z"};
    }
    if (selector == "mub") {
        const MubFamily fam = mub_family(opt.dim);
        OperatorSet set(opt.dim, "mub dim=" + std::to_string(opt.dim));
        for (const MubBasis& b : fam.bases)
            for (int j = 0; j < fam.dim; ++j) {
                ComplexMatrix m(fam.dim);
                for (int r = 0; r < fam.dim; ++r)
                    for (int c = 0; c < fam.dim; ++c)
                        m(r, c) = b.kets[j][r] * std::conj(b.kets[j][c]);
                set.add(b.label + ":" + std::to_string(j), std::move(m));
            }
        return {std::move(set), {}, "rank-1 projectors of the d+1 mutually unbiased bases"};
    }
    throw ParseError("unknown operator-set selector: " + selector);
}

} // namespace qbound
