#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbound/complex_matrix.hpp"
#include "qbound/eig.hpp"
#include "qbound/errors.hpp"
#include "qbound/gram_schmidt.hpp"

namespace qbound {

struct LabeledOperator {
    std::string label;
    ComplexMatrix matrix;
    bool hermitian = true;
};

/// Ordered list of same-dimension operators. Labels are stable strings
/// ("J_x", "X^1Z^2", "Pi_3") used by the CLI and the bound catalog.
class OperatorSet {
public:
    OperatorSet(int dim, std::string label) : dim_(dim), label_(std::move(label)) {}

    void add(std::string op_label, ComplexMatrix m, bool hermitian = true) {
        if (m.dim() != dim_) throw DimensionMismatch("operator dimension differs from set dimension");
        if (hermitian && m.hermiticity_residual() > 1e-12)
            throw HermiticityViolation("operator flagged Hermitian violates tolerance: " + op_label);
        ops_.push_back({std::move(op_label), std::move(m), hermitian});
        endpoints_.push_back(std::nullopt);
    }

    int dim() const { return dim_; }
    int size() const { return int(ops_.size()); }
    const std::string& label() const { return label_; }
    const LabeledOperator& operator[](int i) const { return ops_[i]; }

    bool all_hermitian() const {
        for (const auto& o : ops_)
            if (!o.hermitian) return false;
        return true;
    }

    /// Smallest/largest eigenvalue of operator i (cached after first use).
    std::pair<double, double> endpoints(int i) const {
        if (!endpoints_[i]) {
            if (!ops_[i].hermitian)
                throw NonHermitianOperator("endpoints requested for non-Hermitian operator");
            const auto eig = hermitian_eig(ops_[i].matrix);
            endpoints_[i] = std::make_pair(eig.eigenvalues.front(), eig.eigenvalues.back());
        }
        return *endpoints_[i];
    }

private:
    int dim_;
    std::string label_;
    std::vector<LabeledOperator> ops_;
    mutable std::vector<std::optional<std::pair<double, double>>> endpoints_;
};

/// Index pair (x, z) of a Weyl operator X^x Z^z, stored mod d.
struct WeylLabel {
    int x = 0;
    int z = 0;
    auto operator<=>(const WeylLabel&) const = default;
};

namespace detail {
inline cplx root_of_unity(int numerator, int d) {
    // exp(i 2 pi numerator / d) with the exponent reduced first.
    int r = numerator % d;
    if (r < 0) r += d;
    return std::polar(1.0, 2.0 * std::numbers::pi * double(r) / double(d));
}
} // namespace detail

/// X^x Z^z where X is the cyclic shift and Z the modular phase operator,
/// omega = exp(i 2 pi / d). Unitary for any d >= 2.
inline ComplexMatrix weyl(int x, int z, int dim) {
    if (dim < 2) throw DimensionMismatch("weyl: dim must be >= 2");
    int xr = x % dim;
    if (xr < 0) xr += dim;
    ComplexMatrix m(dim);
    // (X^x Z^z)|j> = omega^{z j} |j + x>
    for (int j = 0; j < dim; ++j) m((j + xr) % dim, j) = detail::root_of_unity(z * j, dim);
    return m;
}

inline std::string weyl_label_string(const WeylLabel& l) {
    return "X^" + std::to_string(l.x) + "Z^" + std::to_string(l.z);
}

/// Coefficients c_xz = tr((X^x Z^z)^dagger A) / d of the unitary-basis
/// resolution A = sum c_xz X^x Z^z.
inline std::map<WeylLabel, cplx> weyl_coefficients(const ComplexMatrix& a) {
    const int d = a.dim();
    std::map<WeylLabel, cplx> out;
    for (int x = 0; x < d; ++x)
        for (int z = 0; z < d; ++z) out[{x, z}] = hs_inner(weyl(x, z, d), a) / double(d);
    return out;
}

inline ComplexMatrix weyl_reconstruct(const std::map<WeylLabel, cplx>& coeff, int dim) {
    ComplexMatrix m(dim);
    for (const auto& [l, c] : coeff) {
        if (c == cplx{}) continue;
        m += c * weyl(l.x, l.z, dim);
    }
    return m;
}

/// Angular momentum operators J_x, J_y, J_z for spin j = two_j / 2.
/// Basis ordering: row 0 is m = j, descending to m = -j, so J_z is
/// diag(j, j-1, ..., -j).
inline OperatorSet spin_operators(int two_j) {
    if (two_j < 1) throw DimensionMismatch("spin_operators: two_j must be >= 1");
    const int d = two_j + 1;
    if (d > kMaxDim) throw DimensionTooLarge("spin_operators: dimension exceeds 16");
    const double j = 0.5 * two_j;

    ComplexMatrix jp(d); // J_+
    for (int k = 1; k < d; ++k) {
        const double m = j - k; // row k-1 holds m+1 = j-k+1
        jp(k - 1, k) = std::sqrt((j - m) * (j + m + 1.0));
    }
    ComplexMatrix jm = jp.adjoint();

    ComplexMatrix jx = 0.5 * (jp + jm);
    ComplexMatrix jy = cplx(0.0, -0.5) * (jp - jm);
    ComplexMatrix jz(d);
    for (int k = 0; k < d; ++k) jz(k, k) = j - k;

    OperatorSet set(d, "spin two_j=" + std::to_string(two_j));
    set.add("J_x", std::move(jx));
    set.add("J_y", std::move(jy));
    set.add("J_z", std::move(jz));
    return set;
}

/// The nine spin-1 observables A_1..A_9 =
/// J_x, J_y, J_z, K_yz, K_zx, K_xy, J_x^2, J_y^2, J_z^2, in that fixed
/// order, with J_i the ket-bra forms whose common J_i^2 eigenbasis is the
/// computational basis.
inline OperatorSet spin1_nine_set() {
    auto ketbra = [](int r, int c) {
        ComplexMatrix m(3);
        m(r, c) = 1.0;
        return m;
    };
    const cplx mi(0.0, -1.0);
    ComplexMatrix jx = mi * (ketbra(0, 1) - ketbra(1, 0));
    ComplexMatrix jy = mi * (ketbra(0, 2) - ketbra(2, 0));
    ComplexMatrix jz = mi * (ketbra(1, 2) - ketbra(2, 1));
    ComplexMatrix kyz = jy * jz + jz * jy;
    ComplexMatrix kzx = jz * jx + jx * jz;
    ComplexMatrix kxy = jx * jy + jy * jx;

    OperatorSet set(3, "spin1-nine");
    set.add("J_x", jx);
    set.add("J_y", jy);
    set.add("J_z", jz);
    set.add("K_yz", kyz);
    set.add("K_zx", kzx);
    set.add("K_xy", kxy);
    set.add("J_x^2", jx * jx);
    set.add("J_y^2", jy * jy);
    set.add("J_z^2", jz * jz);
    return set;
}

/// First six of spin1_nine_set (the traceless Gell-Mann-like part).
inline OperatorSet spin1_six_set() {
    const OperatorSet nine = spin1_nine_set();
    OperatorSet set(3, "spin1-six");
    for (int i = 0; i < 6; ++i) set.add(nine[i].label, nine[i].matrix);
    return set;
}

inline const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}
inline const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m(2, {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0});
    return m;
}
inline const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

/// a . sigma for a unit 3-vector; squares to I, eigenvalues +/-1.
inline ComplexMatrix axis_operator(const Vec3& unit3) {
    if (std::abs(norm(unit3) - 1.0) > 1e-10)
        throw NotUnit("axis_operator: vector is not unit length");
    ComplexMatrix m(2);
    m += cplx(unit3[0]) * pauli_x();
    m += cplx(unit3[1]) * pauli_y();
    m += cplx(unit3[2]) * pauli_z();
    return m;
}

enum class SicVariant { gram, weyl_heisenberg };

/// Qubit SIC-POVM: four unit Bloch vectors with pairwise dot -1/3 and the
/// POVM elements Pi_i = (I + a_i . sigma) / 4.
struct SicPovm {
    std::array<Vec3, 4> bloch;
    OperatorSet projectors;
};

inline SicPovm sic_qubit(SicVariant variant = SicVariant::gram) {
    std::array<Vec3, 4> a{};
    if (variant == SicVariant::gram) {
        // Gram-Schmidt frame: rows of the Cholesky factor of the SIC Gram matrix.
        const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
        a[0] = {1.0, 0.0, 0.0};
        a[1] = {-1.0 / 3.0, 2.0 * s2 / 3.0, 0.0};
        a[2] = {-1.0 / 3.0, -s2 / 3.0, s2 / s3};
    } else {
        // Weyl-Heisenberg covariant tetrahedron.
        const double s = 1.0 / std::sqrt(3.0);
        a[0] = {s, -s, -s};
        a[1] = {-s, s, -s};
        a[2] = {-s, -s, s};
    }
    a[3] = {-(a[0][0] + a[1][0] + a[2][0]), -(a[0][1] + a[1][1] + a[2][1]),
            -(a[0][2] + a[1][2] + a[2][2])};

    OperatorSet set(2, variant == SicVariant::gram ? "sic" : "sic-wh");
    for (int i = 0; i < 4; ++i) {
        ComplexMatrix pi = ComplexMatrix::identity(2) + axis_operator(a[i]);
        pi *= cplx(0.25);
        set.add("Pi_" + std::to_string(i + 1), std::move(pi));
    }
    return {a, std::move(set)};
}

/// The two rank-1 projectors behind the two-projector worked example,
/// with tr(PQ) = 169/675. P projects onto (1, 5i, 7)/sqrt(75) and Q onto
/// (2, 1, -2)/3.
inline std::pair<ComplexMatrix, ComplexMatrix> fig1_projectors() {
    const cplx i(0.0, 1.0);
    ComplexMatrix p(3, {cplx(1.0 / 75.0), -i / 15.0, cplx(7.0 / 75.0),
                        i / 15.0, cplx(1.0 / 3.0), 7.0 * i / 15.0,
                        cplx(7.0 / 75.0), -7.0 * i / 15.0, cplx(49.0 / 75.0)});
    ComplexMatrix q(3, {cplx(4.0), cplx(2.0), cplx(-4.0),
                        cplx(2.0), cplx(1.0), cplx(-2.0),
                        cplx(-4.0), cplx(-2.0), cplx(4.0)});
    q *= cplx(1.0 / 9.0);
    return {std::move(p), std::move(q)};
}

inline OperatorSet fig1_set() {
    auto [p, q] = fig1_projectors();
    OperatorSet set(3, "fig1");
    set.add("P", std::move(p));
    set.add("Q", std::move(q));
    return set;
}

} // namespace qbound
