#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/eig.hpp"
#include "qbound/errors.hpp"
#include "qbound/gram_schmidt.hpp"
#include "qbound/measures.hpp"
#include "qbound/operators.hpp"
#include "qbound/rng.hpp"
#include "qbound/states.hpp"

namespace qbound {

/// Ellipsoidal allowed region E^T G^{-1} E <= 1 for qubit settings.
/// `axis_scale`/`axis_shift` map probability-style coordinates onto E
/// (e.g. p -> 2p - 1 for projector pairs, p -> 4p - 1 for the SIC case).
struct QuadraticRegion {
    RealMatrix gram;
    RealMatrix gram_inverse;
    double axis_scale = 1.0;
    double axis_shift = 0.0;

    int n() const { return gram.n; }

    double quadratic_form(const std::vector<double>& e) const {
        double q = 0.0;
        for (int r = 0; r < gram.n; ++r)
            for (int c = 0; c < gram.n; ++c) q += e[r] * gram_inverse(r, c) * e[c];
        return q;
    }

    bool contains(const std::vector<double>& e, double tol = 1e-12) const {
        return quadratic_form(e) <= 1.0 + tol;
    }

    std::vector<double> coords_to_e(const std::vector<double>& coords) const {
        std::vector<double> e(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) e[i] = axis_scale * coords[i] + axis_shift;
        return e;
    }
};

/// Gram-matrix region of 2 or 3 measurement axes: G_ij = a_i . a_j, with the
/// quantum constraint E^T G^{-1} E <= 1.
inline QuadraticRegion gram_region(const std::vector<Vec3>& axes) {
    const int n = int(axes.size());
    if (n < 2 || n > 3) throw DimensionMismatch("gram_region expects 2 or 3 axes");
    for (const Vec3& a : axes)
        if (std::abs(norm(a) - 1.0) > 1e-10) throw NotUnit("gram_region: axes must be unit vectors");
    RealMatrix g = gram_matrix(axes);
    if (g.det() <= 1e-10)
        throw LinearlyDependent("gram_region: axes linearly dependent; drop the dependent one");
    QuadraticRegion region{g, g.inverse()};
    return region;
}

/// Principal-axis data of the region ellipsoid: O^T G O diagonal with the
/// eigenvalues ascending in `lambdas`; semi-principal axis k has length
/// sqrt(lambdas[k]) along column k of `o`.
struct EllipsoidAxes {
    RealMatrix o;
    std::vector<double> lambdas;
};

inline EllipsoidAxes ellipsoid_axes(const QuadraticRegion& region) {
    const int n = region.n();
    ComplexMatrix h(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) h(r, c) = region.gram(r, c);
    const EigenDecomposition eig = hermitian_eig(h);
    EllipsoidAxes out{RealMatrix::zero(n), eig.eigenvalues};
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out.o(r, c) = eig.eigenvectors(r, c).real();
    return out;
}

/// Allowed region of two rank-1 projector expectations (p, q) with squared
/// overlap t = |<a|b>|^2. For d = 2 it is the ellipse
/// E^T G^{-1} E <= 1, E = (2p-1, 2q-1), G = [[1, 2t-1], [2t-1, 1]]; for
/// d > 2 the convex hull of that ellipse with the point (0, 0). The hull
/// boundary consists of the far arc of the ellipse plus the two axis
/// segments p = 0, q in [0, 1-t] and q = 0, p in [0, 1-t].
class TwoProjectorRegion {
public:
    TwoProjectorRegion(double overlap_sq, int dim) : t_(overlap_sq), dim_(dim) {
        if (!(overlap_sq > 0.0) || !(overlap_sq < 1.0))
            throw DegenerateOverlap("two_projector_region: overlap^2 must lie strictly in (0,1)");
        gamma_ = 2.0 * t_ - 1.0;
    }

    bool hull_with_origin() const { return dim_ > 2; }
    double overlap_sq() const { return t_; }

    /// E^T G^{-1} E in the (x, y) = (2p-1, 2q-1) coordinates.
    double ellipse_form(double p, double q) const {
        const double x = 2.0 * p - 1.0, y = 2.0 * q - 1.0;
        return bilinear(x, y, x, y);
    }

    /// Gauge of the region: <= 1 inside. For the hull case this is the
    /// smallest ellipse form along the ray from (0,0) through the point,
    /// restricted to the segment between them.
    double gauge(double p, double q) const {
        const double qe = ellipse_form(p, q);
        if (!hull_with_origin()) return qe;
        // Ray from v = (-1,-1) (the origin in E-coordinates) through z.
        const double zx = 2.0 * p - 1.0, zy = 2.0 * q - 1.0;
        const double ux = zx + 1.0, uy = zy + 1.0;
        const double buu = bilinear(ux, uy, ux, uy);
        if (buu <= 0.0) return qe; // z == v
        const double buv = bilinear(ux, uy, -1.0, -1.0);
        const double tau = std::max(1.0, -buv / buu);
        const double along = bilinear(-1.0, -1.0, -1.0, -1.0) + 2.0 * tau * buv + tau * tau * buu;
        return std::min(qe, along);
    }

    bool contains(double p, double q, double tol = 1e-12) const { return gauge(p, q) <= 1.0 + tol; }

    /// Distance-style boundary test: on the far ellipse arc or on one of the
    /// two tangent segments, within tol.
    bool on_boundary(double p, double q, double tol = 1e-8) const {
        if (std::abs(ellipse_form(p, q) - 1.0) <= tol && contains(p, q, tol)) return true;
        if (!hull_with_origin()) return false;
        const double reach = 1.0 - t_;
        auto on_segment = [&](double along, double off) {
            return std::abs(off) <= tol && along >= -tol && along <= reach + tol;
        };
        return on_segment(q, p) || on_segment(p, q);
    }

    /// Support function over (w_p, w_q): max of w . (p, q) over the region.
    double support(double wp, double wq) const {
        // Ellipse support in E-coords is sqrt(w^T G w); map back to (p,q).
        const double wg = wp * wp + wq * wq + 2.0 * gamma_ * wp * wq;
        const double ellipse = 0.5 * (wp + wq) + 0.5 * std::sqrt(std::max(wg, 0.0));
        return hull_with_origin() ? std::max(ellipse, 0.0) : ellipse;
    }

    /// Tangency points of the hull segments, (0, 1-t) and (1-t, 0).
    std::array<std::array<double, 2>, 2> tangent_points() const {
        return {{{0.0, 1.0 - t_}, {1.0 - t_, 0.0}}};
    }

private:
    // Bilinear form of G^{-1} in E-coordinates.
    double bilinear(double x1, double y1, double x2, double y2) const {
        return (x1 * x2 + y1 * y2 - gamma_ * (x1 * y2 + y1 * x2)) / (1.0 - gamma_ * gamma_);
    }

    double t_;
    int dim_;
    double gamma_;
};

inline TwoProjectorRegion two_projector_region(double overlap_sq, int dim) {
    return {overlap_sq, dim};
}

/// Support function of the allowed region: h(w) = lambda_max(sum_i w_i A_i),
/// the exact maximum of w . E over quantum states.
inline double support_value(const std::vector<double>& direction, const OperatorSet& ops) {
    if (int(direction.size()) != ops.size())
        throw ArityMismatch("support_value: direction arity differs from operator count");
    ComplexMatrix m(ops.dim());
    for (int i = 0; i < ops.size(); ++i) {
        if (!ops[i].hermitian) throw NonHermitianOperator("support_value needs Hermitian operators");
        m += cplx(direction[i]) * ops[i].matrix;
    }
    return max_eigenvalue(m);
}

struct MembershipVerdict {
    bool inside = false;
    double margin = 0.0;
    std::vector<double> witness_direction;
};

namespace detail {

/// Deterministic probe directions on the unit sphere of R^n: evenly spaced
/// angles for n = 2, a Fibonacci spiral for n = 3, seeded Gaussian
/// directions otherwise.
inline std::vector<std::vector<double>> sphere_directions(int n, int count, std::uint64_t seed) {
    std::vector<std::vector<double>> dirs;
    dirs.reserve(count);
    if (n == 2) {
        Rng rng(seed);
        const double offset = 2.0 * std::numbers::pi * rng.uniform();
        for (int k = 0; k < count; ++k) {
            const double a = offset + 2.0 * std::numbers::pi * k / count;
            dirs.push_back({std::cos(a), std::sin(a)});
        }
    } else if (n == 3) {
        Rng rng(seed);
        const double offset = 2.0 * std::numbers::pi * rng.uniform();
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = offset + golden * k;
            dirs.push_back({r * std::cos(a), r * std::sin(a), z});
        }
    } else {
        Rng rng(seed);
        for (int k = 0; k < count; ++k) {
            std::vector<double> w(n);
            double n2 = 0.0;
            for (double& x : w) {
                x = rng.normal();
                n2 += x * x;
            }
            const double inv = 1.0 / std::sqrt(n2);
            for (double& x : w) x *= inv;
            dirs.push_back(std::move(w));
        }
    }
    return dirs;
}

inline void normalize_inplace(std::vector<double>& w) {
    double n2 = 0.0;
    for (double x : w) n2 += x * x;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : w) x *= inv;
}

/// Projected-gradient descent of f on the unit sphere, gradient by central
/// finite differences. f is differentiable a.e.; kinks at eigenvalue
/// crossings are escaped by one deterministic jitter of 1e-3 radians.
inline std::pair<std::vector<double>, double>
sphere_descend(std::vector<double> w, const std::function<double(const std::vector<double>&)>& f,
               int max_iters, std::uint64_t jitter_seed) {
    const int n = int(w.size());
    normalize_inplace(w);
    double fw = f(w);
    bool jittered = false;
    double step = 0.25;
    for (int iter = 0; iter < max_iters; ++iter) {
        const double delta = 1e-7;
        std::vector<double> grad(n);
        for (int i = 0; i < n; ++i) {
            std::vector<double> wp = w, wm = w;
            wp[i] += delta;
            wm[i] -= delta;
            normalize_inplace(wp);
            normalize_inplace(wm);
            grad[i] = (f(wp) - f(wm)) / (2.0 * delta);
        }
        double gw = 0.0;
        for (int i = 0; i < n; ++i) gw += grad[i] * w[i];
        double gn2 = 0.0;
        for (int i = 0; i < n; ++i) {
            grad[i] -= gw * w[i];
            gn2 += grad[i] * grad[i];
        }
        if (gn2 < 1e-26) {
            if (jittered) break;
            jittered = true;
            Rng rng(jitter_seed);
            for (int i = 0; i < n; ++i) w[i] += 1e-3 * rng.normal();
            normalize_inplace(w);
            fw = std::min(fw, f(w));
            continue;
        }
        bool moved = false;
        while (step > 1e-14) {
            std::vector<double> cand = w;
            for (int i = 0; i < n; ++i) cand[i] -= step * grad[i];
            normalize_inplace(cand);
            const double fc = f(cand);
            if (fc < fw - 1e-18) {
                w = std::move(cand);
                fw = fc;
                step = std::min(step * 1.6, 0.5);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) {
            if (jittered) break;
            jittered = true;
            Rng rng(jitter_seed);
            std::vector<double> cand = w;
            for (int i = 0; i < n; ++i) cand[i] += 1e-3 * rng.normal();
            normalize_inplace(cand);
            if (f(cand) < fw) {
                w = std::move(cand);
                fw = f(w);
            }
            step = 1e-3;
        }
    }
    return {w, fw};
}

} // namespace detail

/// Point-in-region test by minimizing g(w) = h(w) - w . e over the unit
/// sphere of directions: g >= 0 everywhere iff the point belongs to the
/// allowed region (convex duality); the minimizer search is multi-start
/// local descent seeded from `probes` deterministic directions plus the
/// coordinate axes.
inline MembershipVerdict membership(const std::vector<double>& point, const OperatorSet& ops,
                                    double tol = 1e-7, int probes = 512) {
    if (int(point.size()) != ops.size())
        throw ArityMismatch("membership: point arity differs from operator count");
    const int n = ops.size();
    probes = std::max(probes, 100); // contract floor

    auto g = [&](const std::vector<double>& w) {
        double we = 0.0;
        for (int i = 0; i < n; ++i) we += w[i] * point[i];
        return support_value(w, ops) - we;
    };

    std::vector<std::vector<double>> dirs = detail::sphere_directions(n, probes, /*seed=*/12345);
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }

    // Keep the most promising probes as descent seeds.
    std::vector<std::pair<double, int>> scored;
    scored.reserve(dirs.size());
    for (int i = 0; i < int(dirs.size()); ++i) scored.push_back({g(dirs[i]), i});
    std::sort(scored.begin(), scored.end());

    MembershipVerdict verdict;
    verdict.margin = scored.front().first;
    verdict.witness_direction = dirs[scored.front().second];
    const int starts = std::min<int>(8, int(scored.size()));
    for (int s = 0; s < starts; ++s) {
        auto [w, value] = detail::sphere_descend(dirs[scored[s].second], g, 200, 777 + s);
        if (value < verdict.margin) {
            verdict.margin = value;
            verdict.witness_direction = std::move(w);
        }
    }
    verdict.inside = verdict.margin >= -tol;
    return verdict;
}

/// One boundary probe: the support value in a direction and the expectation
/// point of the maximizing eigenstate (an extreme point of the region).
struct BoundarySample {
    std::vector<double> direction;
    std::vector<double> touch;
    double support = 0.0;
};

inline std::vector<BoundarySample> boundary_sample(const OperatorSet& ops, int n_directions,
                                                   std::uint64_t seed) {
    if (n_directions < 1) throw DimensionMismatch("boundary_sample: n_directions must be >= 1");
    if (!ops.all_hermitian()) throw NonHermitianOperator("boundary_sample needs Hermitian operators");
    const int n = ops.size();
    std::vector<BoundarySample> out;
    out.reserve(n_directions);
    for (auto& w : detail::sphere_directions(n, n_directions, seed)) {
        ComplexMatrix m(ops.dim());
        for (int i = 0; i < n; ++i) m += cplx(w[i]) * ops[i].matrix;
        const EigenDecomposition eig = hermitian_eig(m);
        const std::vector<cplx> psi = eig.eigenvector(ops.dim() - 1);
        BoundarySample s;
        s.support = eig.eigenvalues.back();
        s.touch = ket_expectations(psi, ops);
        s.direction = std::move(w);
        out.push_back(std::move(s));
    }
    return out;
}

/// Rasterized view of the allowed region E and a measure region R over a
/// hyperrectangle; each cell is classified by its center point.
struct RegionGrid {
    int n_axes = 0;
    int resolution = 0;
    std::vector<EndpointPair> axes;
    std::vector<std::uint8_t> in_e;
    std::vector<std::uint8_t> in_r;

    std::size_t cell_count() const { return in_e.size(); }

    std::vector<double> center(std::size_t flat) const {
        std::vector<double> x(n_axes);
        for (int a = n_axes - 1; a >= 0; --a) {
            const int k = int(flat % resolution);
            flat /= resolution;
            x[a] = axes[a].a_min + (k + 0.5) * (axes[a].a_max - axes[a].a_min) / resolution;
        }
        return x;
    }
};

/// Fully general rasterizer: `inside_e` decides membership in the allowed
/// region, `measure_sum` evaluates the combined measure at a cell center,
/// and `direction` fixes the inequality side of the bound. A cell violating
/// the measure's domain (e.g. reconstructed probabilities out of range)
/// should be signalled by NaN from `measure_sum`; it is flagged outside R.
inline RegionGrid rasterize_region(const std::vector<EndpointPair>& axes,
                                   const std::function<bool(const std::vector<double>&)>& inside_e,
                                   const std::function<double(const std::vector<double>&)>& measure_sum,
                                   Direction direction, double bound, int resolution) {
    const int n = int(axes.size());
    if (n > 3) throw TooManyOperators("region grids support at most 3 operators");
    RegionGrid grid;
    grid.n_axes = n;
    grid.resolution = resolution;
    grid.axes = axes;
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= resolution;
    grid.in_e.resize(total);
    grid.in_r.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const std::vector<double> x = grid.center(flat);
        grid.in_e[flat] = inside_e(x) ? 1 : 0;
        const double m = measure_sum(x);
        bool ok;
        if (std::isnan(m))
            ok = false;
        else if (direction == Direction::Minimize)
            ok = m >= bound - 1e-9; // uncertainty relation side
        else
            ok = m <= bound + 1e-9; // certainty relation side
        grid.in_r[flat] = ok ? 1 : 0;
    }
    return grid;
}

/// Spec'd convenience form: axes and measure from the operator set itself,
/// allowed-region test via the generic support-function membership.
inline RegionGrid measure_region_grid(const OperatorSet& ops, const MeasureSpec& spec, double bound,
                                      int resolution,
                                      const std::function<bool(const std::vector<double>&)>& inside_e = {}) {
    if (ops.size() > 3) throw TooManyOperators("measure_region_grid supports at most 3 operators");
    std::vector<EndpointPair> axes;
    for (int i = 0; i < ops.size(); ++i) axes.push_back(endpoints_of(ops, i));
    auto inside = inside_e ? inside_e : std::function<bool(const std::vector<double>&)>(
                                            [&ops](const std::vector<double>& x) {
                                                return membership(x, ops, 1e-7, 128).inside;
                                            });
    auto measure = [&axes, spec](const std::vector<double>& x) {
        return combined(x, spec, axes);
    };
    return rasterize_region(axes, inside, measure, spec.direction, bound, resolution);
}

/// Schroedinger-relation expression for a qubit pair of axis observables
/// (c fixed as the normalized cross product):
/// (1 - <A>^2)(1 - <B>^2) - (1 - (a.b)^2) <C>^2 - (a.b - <A><B>)^2.
/// Nonnegative on states, zero exactly on pure states.
inline double schrodinger_expression(double a_dot_b, double ea, double eb, double ec) {
    return (1.0 - ea * ea) * (1.0 - eb * eb) - (1.0 - a_dot_b * a_dot_b) * ec * ec -
           (a_dot_b - ea * eb) * (a_dot_b - ea * eb);
}

} // namespace qbound
