#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/density_state.hpp"
#include "qbound/errors.hpp"
#include "qbound/operators.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// Eigenvalue interval [a_min, a_max] of an observable. Degenerate spectra
/// (a_min = a_max) are rejected; the measures below are undefined there.
struct EndpointPair {
    double a_min = 0.0;
    double a_max = 0.0;

    EndpointPair(double lo, double hi) : a_min(lo), a_max(hi) {
        if (!(a_min < a_max)) throw DegenerateSpectrum("endpoint interval is degenerate");
    }
};

inline EndpointPair endpoints_of(const OperatorSet& ops, int i) {
    auto [lo, hi] = ops.endpoints(i);
    return {lo, hi};
}

/// (<Adot>, <Aring>) with <Adot> = (a_max - <A>)/(a_max - a_min) and
/// <Aring> = 1 - <Adot>. Values within 1e-10 of the interval are clamped.
inline std::pair<double, double> normalized_pair(double value, const EndpointPair& ep) {
    if (value < ep.a_min - 1e-10 || value > ep.a_max + 1e-10)
        throw ValueOutOfRange("expectation value outside eigenvalue interval");
    value = std::clamp(value, ep.a_min, ep.a_max);
    const double dot = (ep.a_max - value) / (ep.a_max - ep.a_min);
    return {dot, 1.0 - dot};
}

namespace detail {
inline double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; } // 0 ln 0 := 0
} // namespace detail

/// Two-outcome entropy H(<A>) = -(<Adot> ln <Adot> + <Aring> ln <Aring>),
/// in [0, ln 2].
inline double h_measure(double value, const EndpointPair& ep) {
    auto [dot, ring] = normalized_pair(value, ep);
    return -(detail::xlnx(dot) + detail::xlnx(ring));
}

/// u_kappa(<A>) = <Adot>^kappa + <Aring>^kappa, kappa > 0, kappa != 1.
inline double u_kappa(double value, const EndpointPair& ep, double kappa) {
    if (!(kappa > 0.0) || kappa == 1.0 || !std::isfinite(kappa))
        throw InvalidKappa("u_kappa requires finite kappa > 0, kappa != 1");
    auto [dot, ring] = normalized_pair(value, ep);
    return std::pow(dot, kappa) + std::pow(ring, kappa);
}

/// u_max(<A>) = max{<Adot>, <Aring>}, in [1/2, 1].
inline double u_max_measure(double value, const EndpointPair& ep) {
    auto [dot, ring] = normalized_pair(value, ep);
    return std::max(dot, ring);
}

/// Standard deviation sqrt(<A^2> - <A>^2) of a Hermitian operator on a state.
/// Radicand down to -1e-12 is treated as roundoff and clamped to 0.
inline double std_dev(const DensityState& rho, const ComplexMatrix& a) {
    if (a.hermiticity_residual() > 1e-12) throw NonHermitianInput("std_dev: operator not Hermitian");
    cplx m1 = 0.0, m2 = 0.0;
    const ComplexMatrix a2 = a * a;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) {
            m1 += rho.matrix()(r, c) * a(c, r);
            m2 += rho.matrix()(r, c) * a2(c, r);
        }
    const double var = m2.real() - m1.real() * m1.real();
    if (var < -1e-12) throw ValueOutOfRange("std_dev: negative variance beyond tolerance");
    return std::sqrt(std::max(var, 0.0));
}

/// Standard deviation of a two-outcome observable as a function of its
/// expectation value alone: (a_max - a_min) sqrt(<Adot><Aring>).
inline double two_outcome_std_dev(double value, const EndpointPair& ep) {
    auto [dot, ring] = normalized_pair(value, ep);
    return (ep.a_max - ep.a_min) * std::sqrt(dot * ring);
}

/// Shannon entropy of a probability vector, 0 ln 0 := 0.
inline double shannon(const std::vector<double>& probs) {
    double sum = 0.0, s = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw NotNormalized("shannon: negative probability");
        sum += p;
        s -= detail::xlnx(std::max(p, 0.0));
    }
    if (std::abs(sum - 1.0) > 1e-10) throw NotNormalized("shannon: probabilities do not sum to 1");
    return s;
}

enum class MeasureKind {
    H,             // per-operator two-outcome entropy, concave
    UKappa,        // per-operator u_kappa, concave for kappa < 1, convex for kappa > 1
    UMax,          // per-operator u_max, convex
    StdDev,        // sum of standard deviations, concave (needs the state)
    StdDevSquared, // sum of variances, concave (needs the state)
    ShannonProbs,  // Shannon entropy of the expectation vector as probabilities
    ProbsPower,    // sum p_i^kappa over the expectation vector
    Renyi2,        // per-operator -ln u_2, concave
};

enum class Direction { Minimize, Maximize };

/// A combined measure plus the direction in which its bound is tight.
/// Construct through the factories; they pin the direction to the curvature
/// (concave kinds are minimized, convex kinds maximized).
struct MeasureSpec {
    MeasureKind kind = MeasureKind::H;
    double kappa = 0.0;
    Direction direction = Direction::Minimize;

    static MeasureSpec h() { return {MeasureKind::H, 0.0, Direction::Minimize}; }
    static MeasureSpec u(double kappa) {
        if (!(kappa > 0.0) || kappa == 1.0 || !std::isfinite(kappa))
            throw InvalidKappa("MeasureSpec::u requires finite kappa > 0, kappa != 1");
        return {MeasureKind::UKappa, kappa, kappa < 1.0 ? Direction::Minimize : Direction::Maximize};
    }
    static MeasureSpec u_max() { return {MeasureKind::UMax, 0.0, Direction::Maximize}; }
    static MeasureSpec std_dev_sum() { return {MeasureKind::StdDev, 0.0, Direction::Minimize}; }
    static MeasureSpec variance_sum() { return {MeasureKind::StdDevSquared, 0.0, Direction::Minimize}; }
    static MeasureSpec shannon_probs() { return {MeasureKind::ShannonProbs, 0.0, Direction::Minimize}; }
    static MeasureSpec probs_power(double kappa) {
        if (!(kappa > 0.0) || kappa == 1.0 || !std::isfinite(kappa))
            throw InvalidKappa("MeasureSpec::probs_power requires finite kappa > 0, kappa != 1");
        return {MeasureKind::ProbsPower, kappa, kappa < 1.0 ? Direction::Minimize : Direction::Maximize};
    }
    static MeasureSpec renyi2() { return {MeasureKind::Renyi2, 0.0, Direction::Minimize}; }

    bool needs_state() const { return kind == MeasureKind::StdDev || kind == MeasureKind::StdDevSquared; }
    bool over_probability_vector() const {
        return kind == MeasureKind::ShannonProbs || kind == MeasureKind::ProbsPower;
    }

    std::string name() const {
        switch (kind) {
            case MeasureKind::H: return "H";
            case MeasureKind::UKappa: return "u_" + std::to_string(kappa);
            case MeasureKind::UMax: return "u_max";
            case MeasureKind::StdDev: return "std_dev";
            case MeasureKind::StdDevSquared: return "std_dev_squared";
            case MeasureKind::ShannonProbs: return "shannon_probs";
            case MeasureKind::ProbsPower: return "probs_power_" + std::to_string(kappa);
            case MeasureKind::Renyi2: return "renyi2";
        }
        return "?";
    }
};

/// Per-operator measure as a function of the expectation value alone.
/// StdDev kinds are admitted only through the two-outcome closed form.
inline double value_measure(double value, const EndpointPair& ep, const MeasureSpec& spec) {
    switch (spec.kind) {
        case MeasureKind::H: return h_measure(value, ep);
        case MeasureKind::UKappa: return u_kappa(value, ep, spec.kappa);
        case MeasureKind::UMax: return u_max_measure(value, ep);
        case MeasureKind::Renyi2: return -std::log(u_kappa(value, ep, 2.0));
        case MeasureKind::StdDev: return two_outcome_std_dev(value, ep);
        case MeasureKind::StdDevSquared: {
            const double s = two_outcome_std_dev(value, ep);
            return s * s;
        }
        default:
            throw Error("value_measure: measure is defined on probability vectors, not per value");
    }
}

/// Combined measure of an expectation point: the per-operator sum for
/// value-based kinds, or the vector measure for probability-vector kinds.
inline double combined(const std::vector<double>& values, const MeasureSpec& spec,
                       const std::vector<EndpointPair>& endpoints) {
    if (spec.over_probability_vector()) {
        if (spec.kind == MeasureKind::ShannonProbs) return shannon(values);
        double s = 0.0;
        for (double p : values) {
            if (p < -1e-12) throw NotNormalized("probs_power: negative probability");
            s += std::pow(std::max(p, 0.0), spec.kappa);
        }
        return s;
    }
    if (values.size() != endpoints.size())
        throw DimensionMismatch("combined: endpoint count differs from value count");
    double s = 0.0;
    for (size_t i = 0; i < values.size(); ++i) s += value_measure(values[i], endpoints[i], spec);
    return s;
}

inline double combined(const ExpectationPoint& pt, const MeasureSpec& spec,
                       const std::vector<EndpointPair>& endpoints) {
    return combined(pt.values, spec, endpoints);
}

/// Combined std-dev measure straight from the state (any spectra).
inline double combined_std_dev(const DensityState& rho, const OperatorSet& ops, bool squared) {
    double s = 0.0;
    for (int i = 0; i < ops.size(); ++i) {
        const double d = std_dev(rho, ops[i].matrix);
        s += squared ? d * d : d;
    }
    return s;
}

} // namespace qbound
