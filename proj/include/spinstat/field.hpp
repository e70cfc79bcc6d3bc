#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "spinstat/spin.hpp"

namespace spinstat {

// User-facing description of a free field: spin label plus the M+/M- pair.
// The functions are stored with parameters already substituted; `params`
// is kept for report echoes.
struct FieldSpec {
    int two_j = 0;
    RationalFunc2 m_plus;
    RationalFunc2 m_minus;
    std::map<std::string, Rational> params;
    bool neutral = false;  // antiparticle identified with particle
};

// Whether f vanishes identically on the spin-j representation, i.e. on
// every helicity ray y = sigma p. Stricter than formal zero-ness: for
// two_j = 0 the only ray is y = 0, so any pure-y numerator dies. Exact.
inline bool is_zero_on_rep(const RationalFunc2& f, int two_j) {
    if (f.is_zero()) return true;
    for (int i = 0; i <= two_j; ++i) {
        Rational sigma(two_j - 2 * i, 2);
        if (!restrict_poly_to_ray(f.numerator(), sigma).is_zero() &&
            !restrict_poly_to_ray(f.denominator(), sigma).is_zero())
            return false;
    }
    return true;
}

// cos(j pi) and sin(j pi), exact from the parity of two_j.
inline int cos_j_pi(int two_j) {
    if (two_j % 2 != 0) return 0;
    return (two_j / 2) % 2 == 0 ? 1 : -1;
}
inline int sin_j_pi(int two_j) {
    if (two_j % 2 == 0) return 0;
    return ((two_j - 1) / 2) % 2 == 0 ? 1 : -1;
}

// The assembled bispinor field: Omega, S_T, S_C and the block-rotation J.
// All matrices have size 2(2j+1); blocks are ordered (upper, lower) spinor.
struct CanonicalField {
    FieldSpec spec;
    SpinRep rep;
    Matrix omega;
    Matrix s_t;
    Matrix s_c;
    Matrix j_matrix;
    int cos_jpi = 1;
    int sin_jpi = 0;

    int dim() const { return 2 * (spec.two_j + 1); }
    int block_dim() const { return spec.two_j + 1; }
};

namespace detail {

// [[a*B, b*B], [c*B, d*B]] for a (2j+1) block B.
inline Matrix block2(const Matrix& b, double a11, double a12, double a21,
                     double a22) {
    const Eigen::Index d = b.rows();
    Matrix out = Matrix::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d) = a11 * b;
    out.topRightCorner(d, d) = a12 * b;
    out.bottomLeftCorner(d, d) = a21 * b;
    out.bottomRightCorner(d, d) = a22 * b;
    return out;
}

}  // namespace detail

inline CanonicalField build(const FieldSpec& spec) {
    if (spec.two_j < 0) throw ValidationError("two_j must be nonnegative");
    if (spec.m_plus.is_zero())
        throw ValidationError(
            "m_plus is the zero function: the field has no dynamics");
    CanonicalField f;
    f.spec = spec;
    f.rep = spin_matrices(spec.two_j);
    f.cos_jpi = cos_j_pi(spec.two_j);
    f.sin_jpi = sin_j_pi(spec.two_j);
    const int d = f.block_dim();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix r2 = r2_matrix(spec.two_j);
    f.omega = detail::block2(id, 0, 1, 1, 0);
    f.s_t = detail::block2(r2, 1, 0, 0, 1);
    f.s_c = detail::block2(r2, f.cos_jpi, f.sin_jpi, -f.sin_jpi, -f.cos_jpi);
    f.j_matrix =
        detail::block2(id, f.cos_jpi, f.sin_jpi, -f.sin_jpi, -f.cos_jpi);
    return f;
}

// M(p) = M+(p^2, p.S) on both diagonal blocks plus M-(p^2, p.S) spread
// through the J block pattern. Hermitian for real p.
inline Matrix m_matrix(const CanonicalField& f, const Vector3& p_vec,
                       double pole_tol = kDefaultPoleTol) {
    const Matrix mp = scalar_func_of_pdotS(f.spec.m_plus, p_vec, f.rep, pole_tol);
    const Matrix mm = scalar_func_of_pdotS(f.spec.m_minus, p_vec, f.rep, pole_tol);
    const int d = f.block_dim();
    Matrix out = Matrix::Zero(2 * d, 2 * d);
    out.topLeftCorner(d, d) = mp + double(f.cos_jpi) * mm;
    out.topRightCorner(d, d) = double(f.sin_jpi) * mm;
    out.bottomLeftCorner(d, d) = -double(f.sin_jpi) * mm;
    out.bottomRightCorner(d, d) = mp - double(f.cos_jpi) * mm;
    return out;
}

// Residuals of every symmetry constraint the construction must satisfy.
// Failures are data, not errors.
struct SymmetryReport {
    double t_omega = 0;        // S_T' Omega* S_T - Omega
    double c_omega = 0;        // S_C' Omega S_C + Omega*
    double t_m = 0;            // S_T' M*(-p) S_T - M(p)
    double c_m = 0;            // S_C' M(p) S_C - M*(-p)
    double t_spin = 0;         // S_T' S* S_T + S  (bispinor spin matrices)
    double c_spin = 0;         // S_C' S S_C + S*
    double c_involution = 0;   // S_C S_C* - I
    // Hermiticity of the energy operator: M itself for integer j,
    // Omega M for half-odd j (the Dirac M of the canonical form is not
    // Hermitian, its Omega M is).
    double m_hermiticity = 0;
    double block_commutator = 0;  // [M+ term, M- term]
    double tolerance = 1e-10;
    bool pass = false;

    double max_residual() const {
        double r = t_omega;
        for (double v : {c_omega, t_m, c_m, t_spin, c_spin, c_involution,
                         m_hermiticity, block_commutator})
            r = std::max(r, v);
        return r;
    }
};

inline SymmetryReport verify_symmetries(const CanonicalField& f,
                                        std::span<const Vector3> p_samples,
                                        double tol = 1e-10) {
    SymmetryReport rep;
    rep.tolerance = tol;
    const int d = f.block_dim();
    const Matrix id2 = Matrix::Identity(2 * d, 2 * d);

    rep.t_omega = max_abs(f.s_t.adjoint() * f.omega.conjugate() * f.s_t - f.omega);
    rep.c_omega =
        max_abs(f.s_c.adjoint() * f.omega * f.s_c + f.omega.conjugate());
    rep.c_involution = max_abs(f.s_c * f.s_c.conjugate() - id2);

    const Matrix* spin[3] = {&f.rep.s1, &f.rep.s2, &f.rep.s3};
    for (const Matrix* s : spin) {
        Matrix big = detail::block2(*s, 1, 0, 0, 1);
        rep.t_spin = std::max(
            rep.t_spin,
            max_abs(f.s_t.adjoint() * big.conjugate() * f.s_t + big));
        rep.c_spin = std::max(
            rep.c_spin,
            max_abs(f.s_c.adjoint() * big * f.s_c + big.conjugate()));
    }

    for (const Vector3& p : p_samples) {
        Matrix m_pos = m_matrix(f, p);
        Matrix m_neg = m_matrix(f, -p);
        rep.t_m = std::max(
            rep.t_m,
            max_abs(f.s_t.adjoint() * m_neg.conjugate() * f.s_t - m_pos));
        rep.c_m = std::max(
            rep.c_m,
            max_abs(f.s_c.adjoint() * m_pos * f.s_c - m_neg.conjugate()));
        Matrix h = f.spec.two_j % 2 == 0 ? m_pos : Matrix(f.omega * m_pos);
        rep.m_hermiticity =
            std::max(rep.m_hermiticity, max_abs(h - h.adjoint()));

        Matrix mp = scalar_func_of_pdotS(f.spec.m_plus, p, f.rep);
        Matrix mm = scalar_func_of_pdotS(f.spec.m_minus, p, f.rep);
        rep.block_commutator =
            std::max(rep.block_commutator, max_abs(mp * mm - mm * mp));
    }

    rep.pass = rep.max_residual() < tol;
    return rep;
}

}  // namespace spinstat
