#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qbound/errors.hpp"
#include "qbound/measures.hpp"
#include "qbound/operators.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// Knobs of the global extremizer. grid_points = 0 picks the default rule:
/// 24 lattice points per angle for d <= 3, 12 for d >= 4, lowered until the
/// full lattice stays under ~3e6 evaluations. Identical configs give
/// bit-identical results; the whole pipeline is deterministic.
struct OptimizerConfig {
    int grid_points = 0;
    int refine_iterations = 400;
    int restarts = 32;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
};

struct BoundResult {
    std::string name;
    std::string set_label;
    MeasureSpec spec;
    double value = 0.0;
    std::vector<double> argopt_angles; // thetas then phis
    std::vector<double> argopt_expectations;
    std::optional<double> paper_value;
    std::string paper_expression;
    double deviation = 0.0;

    PureStateAngles argopt(int dim) const {
        const int n = dim - 1;
        return PureStateAngles(dim, {argopt_angles.begin(), argopt_angles.begin() + n},
                               {argopt_angles.begin() + n, argopt_angles.end()});
    }
};

namespace detail {

/// Map raw iterate angles back into the box: thetas reflected into
/// [0, pi/2] (triangle wave), phis wrapped mod 2 pi.
inline void canonicalize_angles(std::vector<double>& a, int n_thetas) {
    const double half_pi = 0.5 * std::numbers::pi;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < int(a.size()); ++i) {
        if (i < n_thetas) {
            double t = std::fmod(std::abs(a[i]), 2.0 * half_pi);
            if (t > half_pi) t = 2.0 * half_pi - t;
            a[i] = t;
        } else {
            double p = std::fmod(a[i], two_pi);
            if (p < 0.0) p += two_pi;
            a[i] = p;
        }
    }
}

/// Pure-state objective: angles -> ket -> expectations -> combined measure.
/// Values are negated for Maximize so the driver always minimizes.
class PureStateObjective {
public:
    PureStateObjective(const OperatorSet& ops, const MeasureSpec& spec)
        : ops_(ops), spec_(spec), dim_(ops.dim()), n_thetas_(ops.dim() - 1) {
        if (!spec.needs_state() && !spec.over_probability_vector())
            for (int i = 0; i < ops.size(); ++i) endpoints_.push_back(endpoints_of(ops, i));
        if (spec.needs_state())
            for (int i = 0; i < ops.size(); ++i) squares_.push_back(ops[i].matrix * ops[i].matrix);
    }

    int n_angles() const { return 2 * (dim_ - 1); }
    int n_thetas() const { return n_thetas_; }
    int dim() const { return dim_; }
    const OperatorSet& ops() const { return ops_; }

    std::vector<double> expectation_values(const std::vector<double>& angles) const {
        return ket_expectations(ket(angles), ops_);
    }

    /// Signed objective (already negated for Maximize); fills `e_out` with
    /// the expectation vector when requested.
    double eval(const std::vector<double>& raw, std::vector<double>* e_out = nullptr) const {
        std::vector<double> a = raw;
        canonicalize_angles(a, n_thetas_);
        const std::vector<cplx> k = ket(a);
        const std::vector<double> e = ket_expectations(k, ops_);
        double v;
        if (spec_.needs_state()) {
            v = 0.0;
            for (int i = 0; i < ops_.size(); ++i) {
                cplx m2 = 0.0;
                for (int r = 0; r < dim_; ++r) {
                    cplx row = 0.0;
                    for (int c = 0; c < dim_; ++c) row += squares_[i](r, c) * k[c];
                    m2 += std::conj(k[r]) * row;
                }
                const double var = std::max(m2.real() - e[i] * e[i], 0.0);
                v += (spec_.kind == MeasureKind::StdDevSquared) ? var : std::sqrt(var);
            }
        } else {
            v = combined(e, spec_, endpoints_);
        }
        if (e_out) *e_out = e;
        return spec_.direction == Direction::Maximize ? -v : v;
    }

    double operator()(const std::vector<double>& raw) const { return eval(raw); }

private:
    std::vector<cplx> ket(const std::vector<double>& a) const {
        // Inline Eq.-style ket assembly; angles already canonical.
        std::vector<cplx> k(dim_);
        double sines = 1.0;
        for (int l = 0; l < dim_ - 1; ++l) {
            const double amp = sines * std::cos(a[l]);
            k[l] = (l == 0) ? cplx(amp) : std::polar(amp, a[n_thetas_ + l - 1]);
            sines *= std::sin(a[l]);
        }
        k[dim_ - 1] = std::polar(sines, a[n_thetas_ + dim_ - 2]);
        return k;
    }

    const OperatorSet& ops_;
    MeasureSpec spec_;
    int dim_;
    int n_thetas_;
    std::vector<EndpointPair> endpoints_;
    std::vector<ComplexMatrix> squares_;
};

inline int default_grid_points(int dim, int n_angles) {
    int g = dim <= 3 ? 24 : 12;
    auto total = [&](int gp) {
        double t = 1.0;
        for (int i = 0; i < n_angles; ++i) t *= gp;
        return t;
    };
    while (g > 5 && total(g) > 3.0e6) --g;
    return g;
}

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> angles;
    std::vector<double> expectations;
};

/// Bounded pool of good lattice points kept pairwise separated in
/// expectation space, so later refinements start in distinct basins.
class DiverseSeedPool {
public:
    DiverseSeedPool(int capacity, double radius) : cap_(capacity), r2_(radius * radius) {}

    void offer(double value, const std::vector<double>& angles, const std::vector<double>& e) {
        for (Candidate& kept : pool_)
            if (dist2(kept.expectations, e) < r2_) {
                if (value < kept.value) kept = {value, angles, e};
                return;
            }
        if (int(pool_.size()) < cap_) {
            pool_.push_back({value, angles, e});
            return;
        }
        auto worst = std::max_element(pool_.begin(), pool_.end(),
                                      [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
        if (value < worst->value) *worst = {value, angles, e};
    }

    std::vector<Candidate> sorted() && {
        std::sort(pool_.begin(), pool_.end(),
                  [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
        return std::move(pool_);
    }

private:
    static double dist2(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return s;
    }
    int cap_;
    double r2_;
    std::vector<Candidate> pool_;
};

/// Nelder-Mead with the textbook coefficients (reflect 1, expand 2,
/// contract 1/2, shrink 1/2) on the wrapped angle box.
inline Candidate nelder_mead(const PureStateObjective& f, const std::vector<double>& seed,
                             const std::vector<double>& steps, int iterations) {
    const int n = int(seed.size());
    std::vector<std::vector<double>> x(n + 1, seed);
    std::vector<double> fx(n + 1);
    for (int i = 0; i < n; ++i) x[i + 1][i] += steps[i];
    for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        std::vector<std::vector<double>> xs(n + 1);
        std::vector<double> fs(n + 1);
        for (int i = 0; i <= n; ++i) {
            xs[i] = x[idx[i]];
            fs[i] = fx[idx[i]];
        }
        x = std::move(xs);
        fx = std::move(fs);
    };

    order();
    for (int it = 0; it < iterations; ++it) {
        if (fx[n] - fx[0] < 1e-14 && it > n) break;
        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += x[i][j] / n;

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = centroid[j] + coef * (centroid[j] - x[n][j]);
            return p;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = f(xr);
        if (fr < fx[0]) {
            std::vector<double> xe = blend(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                x[n] = std::move(xe);
                fx[n] = fe;
            } else {
                x[n] = std::move(xr);
                fx[n] = fr;
            }
        } else if (fr < fx[n - 1]) {
            x[n] = std::move(xr);
            fx[n] = fr;
        } else {
            std::vector<double> xc = (fr < fx[n]) ? blend(0.5) : blend(-0.5);
            const double fc = f(xc);
            if (fc < std::min(fr, fx[n])) {
                x[n] = std::move(xc);
                fx[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j) x[i][j] = x[0][j] + 0.5 * (x[i][j] - x[0][j]);
                    fx[i] = f(x[i]);
                }
            }
        }
        order();
    }

    Candidate best;
    best.angles = x[0];
    canonicalize_angles(best.angles, (int(seed.size())) / 2);
    best.value = fx[0];
    best.expectations = f.expectation_values(best.angles);
    return best;
}

} // namespace detail

/// Full outcome of a bound optimization: the winner plus every refined
/// restart endpoint (used for witness clustering).
struct OptimizationOutcome {
    detail::Candidate best;
    std::vector<detail::Candidate> refined;
};

inline OptimizationOutcome optimize_detail(const OperatorSet& ops, const MeasureSpec& spec,
                                           const OptimizerConfig& config) {
    const detail::PureStateObjective f(ops, spec);
    const int n = f.n_angles();
    const int n_thetas = f.n_thetas();
    const int g = config.grid_points > 0 ? config.grid_points : detail::default_grid_points(f.dim(), n);

    // Diversity radius from the spread of the operator intervals.
    double diam2 = 0.0;
    if (ops.all_hermitian()) {
        for (int i = 0; i < ops.size(); ++i) {
            const auto ep = endpoints_of(ops, i);
            diam2 += (ep.a_max - ep.a_min) * (ep.a_max - ep.a_min);
        }
    } else {
        diam2 = ops.size();
    }
    detail::DiverseSeedPool pool(config.restarts, 0.15 * std::sqrt(diam2));

    const double half_pi = 0.5 * std::numbers::pi;
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> angles(n);
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= g;
    std::vector<double> e_scratch;
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int i = 0; i < n; ++i) {
            const int k = int(rem % g);
            rem /= g;
            angles[i] = (i < n_thetas) ? half_pi * k / (g - 1) : two_pi * k / g;
        }
        const double v = f.eval(angles, &e_scratch);
        pool.offer(v, angles, e_scratch);
    }

    std::vector<double> steps(n);
    for (int i = 0; i < n; ++i) steps[i] = 0.5 * ((i < n_thetas) ? half_pi / (g - 1) : two_pi / g);

    OptimizationOutcome out;
    for (const detail::Candidate& seed : std::move(pool).sorted()) {
        detail::Candidate c = detail::nelder_mead(f, seed.angles, steps, config.refine_iterations);
        if (c.value < out.best.value) out.best = c;
        out.refined.push_back(std::move(c));
    }
    return out;
}

/// Global extremization of a combined measure over pure states: coarse
/// lattice over the 2(d-1) angle box, then simplex refinement of the best
/// lattice cells. Concave measures are minimized, convex ones maximized
/// (fixed by the MeasureSpec).
inline BoundResult optimize_bound(const OperatorSet& ops, const MeasureSpec& spec,
                                  const OptimizerConfig& config = {}) {
    OptimizationOutcome out = optimize_detail(ops, spec, config);
    BoundResult r;
    r.set_label = ops.label();
    r.spec = spec;
    r.value = spec.direction == Direction::Maximize ? -out.best.value : out.best.value;
    r.argopt_angles = out.best.angles;
    r.argopt_expectations = out.best.expectations;
    return r;
}

/// Tight bound on the sum of standard deviations (or variances) over pure
/// states; deviations are computed from the state, so any spectrum is fine.
inline BoundResult std_dev_bound(const OperatorSet& ops, bool squared,
                                 const OptimizerConfig& config = {}) {
    return optimize_bound(ops, squared ? MeasureSpec::variance_sum() : MeasureSpec::std_dev_sum(),
                          config);
}

} // namespace qbound
