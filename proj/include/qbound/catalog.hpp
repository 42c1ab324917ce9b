#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qbound/constraints.hpp"
#include "qbound/errors.hpp"
#include "qbound/geometry.hpp"
#include "qbound/measures.hpp"
#include "qbound/mub.hpp"
#include "qbound/operators.hpp"
#include "qbound/optimizer.hpp"
#include "qbound/random_states.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// Overlap parameter of the standard two-setting qubit example,
/// epsilon = |<a|b>|^2 = 3/4 (a.b = 1/2).
inline constexpr double kQubit2Epsilon = 0.75;

inline OperatorSet qubit2_projectors() {
    const Vec3 a{1.0, 0.0, 0.0};
    const Vec3 b{0.5, std::sqrt(3.0) / 2.0, 0.0};
    OperatorSet set(2, "qubit2-projectors");
    for (auto& [label, axis] : {std::pair<const char*, Vec3>{"P", a}, {"Q", b}}) {
        ComplexMatrix m = ComplexMatrix::identity(2) + axis_operator(axis);
        m *= cplx(0.5);
        set.add(label, std::move(m));
    }
    return set;
}

inline OperatorSet qubit2_axis_observables() {
    OperatorSet set(2, "qubit2-axes");
    set.add("A", axis_operator({1.0, 0.0, 0.0}));
    set.add("B", axis_operator({0.5, std::sqrt(3.0) / 2.0, 0.0}));
    return set;
}

inline OperatorSet sic_axis_observables() {
    const SicPovm sic = sic_qubit(SicVariant::gram);
    OperatorSet set(2, "sic-axes");
    for (int i = 0; i < 4; ++i)
        set.add("a_" + std::to_string(i + 1), axis_operator(sic.bloch[i]));
    return set;
}

inline OperatorSet mub3_projector_set() {
    const MubFamily fam = mub_family(3);
    OperatorSet set(3, "mub3-projectors");
    for (size_t b = 0; b < fam.bases.size(); ++b)
        for (int j = 0; j < fam.dim; ++j) {
            ComplexMatrix m(3);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    m(r, c) = fam.bases[b].kets[j][r] * std::conj(fam.bases[b].kets[j][c]);
            set.add(fam.bases[b].label + ":" + std::to_string(j), std::move(m));
        }
    return set;
}

/// Saturating angles printed for the spin-1 u_max certainty bound
/// (theta_0, theta_1, phi_1, phi_2).
inline std::array<double, 4> spin1_umax_witness_angles() {
    return {0.482720, 0.785398, 2.520428, 3.762757};
}

/// The four (2 theta, phi) rows of the SIC entropy minimizers (Bloch vectors
/// -a_1..-a_4 in the parametrization (sin 2t cos f, sin 2t sin f, cos 2t)).
inline std::array<std::array<double, 2>, 4> sic_entropy_minimizer_table() {
    const double pi = std::numbers::pi;
    return {{{0.5 * pi, pi},
             {0.5 * pi, pi + std::acos(-1.0 / 3.0)},
             {pi - std::acos(std::sqrt(2.0 / 3.0)), std::acos(1.0 / std::sqrt(3.0))},
             {std::acos(std::sqrt(2.0 / 3.0)), std::acos(1.0 / std::sqrt(3.0))}}};
}

/// One named bound of the catalog: how to build the operator set and
/// measure, the reference value, and the deviation gate.
struct NamedBound {
    std::string name;
    std::function<OperatorSet()> make_ops;
    MeasureSpec spec;
    double paper_value = 0.0;
    std::string paper_expression;
    double gate = 1e-6;
    int expected_witnesses = 0;      // 0 = no witness-count claim
    bool at_maximally_mixed = false; // evaluate the measure there instead of optimizing
};

inline const std::vector<NamedBound>& named_bounds() {
    static const std::vector<NamedBound> bounds = [] {
        std::vector<NamedBound> v;
        const double ln2 = std::log(2.0);
        const double sqrt2 = std::sqrt(2.0), sqrt3 = std::sqrt(3.0);

        auto nine = [] { return spin1_nine_set(); };
        auto six = [] { return spin1_six_set(); };
        v.push_back({"spin1.H", nine, MeasureSpec::h(), 6.0 * ln2, "6 ln 2"});
        v.push_back({"spin1.u_half", nine, MeasureSpec::u(0.5), 3.0 + 6.0 * sqrt2, "3 + 6 sqrt(2)"});
        v.push_back({"spin1.u2", nine, MeasureSpec::u(2.0), 6.0, "6"});
        v.push_back({"spin1.u_max", nine, MeasureSpec::u_max(), 6.51702, "6.51702", 1e-4});
        v.push_back({"spin1.std9", nine, MeasureSpec::std_dev_sum(), 4.0, "4"});
        v.push_back({"spin1.std6", six, MeasureSpec::std_dev_sum(), 1.0 + 2.0 * sqrt2, "1 + 2 sqrt(2)"});
        v.push_back({"spin1.var9", nine, MeasureSpec::variance_sum(), 10.0 / 3.0, "10/3"});
        v.push_back({"spin1.var6", six, MeasureSpec::variance_sum(), 8.0 / 3.0, "8/3"});

        for (int two_j = 1; two_j <= 4; ++two_j) {
            const std::string suffix = ".twoj" + std::to_string(two_j);
            auto ops = [two_j] { return spin_operators(two_j); };
            v.push_back({"spinj.H" + suffix, ops, MeasureSpec::h(), 2.0 * ln2, "2 ln 2", 1e-6, 6});
            v.push_back({"spinj.H2" + suffix, ops, MeasureSpec::renyi2(), 3.0 * std::log(1.5),
                         "3 ln(3/2)", 1e-6, 8});
            v.push_back({"spinj.u_half" + suffix, ops, MeasureSpec::u(0.5), 1.0 + 2.0 * sqrt2,
                         "1 + 2 sqrt(2)"});
            v.push_back({"spinj.u2" + suffix, ops, MeasureSpec::u(2.0), 2.0, "2"});
            v.push_back({"spinj.u_max" + suffix, ops, MeasureSpec::u_max(), 0.5 * (3.0 + sqrt3),
                         "(3 + sqrt(3))/2", 1e-6, 8});
            v.push_back({"spinj.var" + suffix, ops, MeasureSpec::variance_sum(), 0.5 * two_j, "j"});
        }

        const double eps = kQubit2Epsilon;
        auto binary_h = [](double p) {
            auto term = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
            return -(term(p) + term(1.0 - p));
        };
        v.push_back({"qubit2.std", qubit2_axis_observables, MeasureSpec::std_dev_sum(),
                     std::sqrt(1.0 - (2.0 * eps - 1.0) * (2.0 * eps - 1.0)), "sqrt(1-(2eps-1)^2)"});
        v.push_back({"qubit2.H", qubit2_projectors, MeasureSpec::h(),
                     2.0 * binary_h(0.5 * (1.0 + std::sqrt(eps))), "2 h((1+sqrt(eps))/2)"});
        v.push_back({"qubit2.u_half", qubit2_projectors, MeasureSpec::u(0.5),
                     1.0 + std::sqrt(eps) + std::sqrt(1.0 - eps), "1 + sqrt(eps) + sqrt(1-eps)"});
        v.push_back({"qubit2.u2", qubit2_projectors, MeasureSpec::u(2.0),
                     std::max(2.0 - eps, 1.0 + eps), "max{2-eps, 1+eps}"});
        v.push_back({"qubit2.u_max", qubit2_projectors, MeasureSpec::u_max(), 1.0 + std::sqrt(eps),
                     "1 + sqrt(eps)"});

        auto sic_projs = [] { return sic_qubit(SicVariant::gram).projectors; };
        v.push_back({"sic.std", sic_axis_observables, MeasureSpec::std_dev_sum(), 2.0 * sqrt2,
                     "2 sqrt(2)"});
        v.push_back({"sic.entropy", sic_projs, MeasureSpec::shannon_probs(), std::log(3.0), "ln 3",
                     1e-6, 4});
        v.push_back({"sic.u_half", sic_projs, MeasureSpec::probs_power(0.5), sqrt3, "sqrt(3)"});
        v.push_back({"sic.purity_max", sic_projs, MeasureSpec::probs_power(2.0), 1.0 / 3.0, "1/3"});
        {
            NamedBound purity_min{"sic.purity_min", sic_projs, MeasureSpec::probs_power(2.0),
                                  0.25, "1/4"};
            purity_min.at_maximally_mixed = true;
            v.push_back(std::move(purity_min));
        }

        v.push_back({"mub3.quadratic", mub3_projector_set, MeasureSpec::probs_power(2.0), 2.0, "2"});
        return v;
    }();
    return bounds;
}

inline const NamedBound& find_named_bound(const std::string& name) {
    for (const NamedBound& nb : named_bounds())
        if (nb.name == name) return nb;
    throw UnknownBound("no bound named " + name);
}

inline BoundResult run_named_bound(const NamedBound& nb, const OptimizerConfig& config = {}) {
    const OperatorSet ops = nb.make_ops();
    BoundResult r;
    if (nb.at_maximally_mixed) {
        // Convex measures are minimized in the interior, not at extreme
        // points; the minimizer here is the maximally mixed state.
        const ExpectationPoint pt = expectations(maximally_mixed(ops.dim()), ops);
        r.set_label = ops.label();
        r.spec = nb.spec;
        r.value = combined(pt.values, nb.spec, {});
        r.argopt_expectations = pt.values;
    } else {
        r = optimize_bound(ops, nb.spec, config);
    }
    r.name = nb.name;
    r.paper_value = nb.paper_value;
    r.paper_expression = nb.paper_expression;
    r.deviation = std::abs(r.value - nb.paper_value);
    return r;
}

struct CatalogRow {
    BoundResult result;
    double gate = 1e-6;
    bool pass = false;
    int expected_witnesses = 0;
};

/// Run every named bound (or those matching `filter`: exact name or a
/// dot-boundary prefix) and compare against the reference values.
inline std::vector<CatalogRow> run_catalog(const OptimizerConfig& config = {},
                                           const std::string& filter = "") {
    std::vector<CatalogRow> rows;
    for (const NamedBound& nb : named_bounds()) {
        if (!filter.empty() && nb.name != filter && nb.name.rfind(filter + ".", 0) != 0) continue;
        CatalogRow row;
        row.result = run_named_bound(nb, config);
        row.gate = nb.gate;
        row.pass = row.result.deviation <= nb.gate;
        row.expected_witnesses = nb.expected_witnesses;
        rows.push_back(std::move(row));
    }
    if (rows.empty() && !filter.empty()) throw UnknownBound("no bound matches " + filter);
    return rows;
}

/// A distinct optimizer of a named bound: representative angles, the
/// expectation point, and the achieved value.
struct Witness {
    std::vector<double> angles;
    std::vector<double> expectations;
    double value = 0.0;
};

/// All distinct argopt states found across restarts. Endpoints within
/// 1e-5 (relative) of the best value are clustered in expectation space;
/// the cluster radius scales with the spread of the operator intervals,
/// floored at the 1e-3 angular tolerance.
inline std::vector<Witness> minimizer_witnesses(const std::string& name,
                                                OptimizerConfig config = {}) {
    const NamedBound& nb = find_named_bound(name);
    if (nb.at_maximally_mixed)
        throw UnknownBound("bound " + name + " is not optimized over pure states");
    config.restarts = std::max(config.restarts, 48);
    config.refine_iterations = std::max(config.refine_iterations, 800);
    const OperatorSet ops = nb.make_ops();
    OptimizationOutcome out = optimize_detail(ops, nb.spec, config);

    std::vector<detail::Candidate> close;
    for (const detail::Candidate& c : out.refined)
        if (c.value - out.best.value <= 1e-5 * std::max(1.0, std::abs(out.best.value)))
            close.push_back(c);
    std::sort(close.begin(), close.end(),
              [](const detail::Candidate& a, const detail::Candidate& b) { return a.value < b.value; });

    double diam2 = 0.0;
    if (ops.all_hermitian()) {
        for (int i = 0; i < ops.size(); ++i) {
            const auto ep = endpoints_of(ops, i);
            diam2 += (ep.a_max - ep.a_min) * (ep.a_max - ep.a_min);
        }
    } else {
        diam2 = ops.size();
    }
    const double radius = std::max(1e-3, 0.02 * std::sqrt(diam2));

    std::vector<Witness> witnesses;
    for (const detail::Candidate& c : close) {
        bool fresh = true;
        for (const Witness& w : witnesses) {
            double d2 = 0.0;
            for (size_t i = 0; i < w.expectations.size(); ++i)
                d2 += (w.expectations[i] - c.expectations[i]) * (w.expectations[i] - c.expectations[i]);
            if (d2 < radius * radius) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            const double signed_to_value =
                nb.spec.direction == Direction::Maximize ? -c.value : c.value;
            witnesses.push_back({c.angles, c.expectations, signed_to_value});
        }
    }
    return witnesses;
}

} // namespace qbound
