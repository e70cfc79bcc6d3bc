#pragma once

#include <cmath>
#include <complex>

#include "spinstat/errors.hpp"
#include "spinstat/numeric.hpp"
#include "spinstat/ratfunc.hpp"

namespace spinstat {

inline constexpr std::complex<double> kI{0.0, 1.0};

// Spin-j representation matrices, basis ordered by the S3 eigenvalue
// m = j, j-1, ..., -j. Built by the ladder-operator construction.
struct SpinRep {
    int two_j = 0;
    Matrix s1, s2, s3;

    int dim() const { return two_j + 1; }
    double j() const { return 0.5 * two_j; }
    // m value of basis index i
    double m_of(int i) const { return 0.5 * (two_j - 2 * i); }
};

inline SpinRep spin_matrices(int two_j) {
    if (two_j < 0) throw ValidationError("two_j must be nonnegative");
    const int d = two_j + 1;
    const double j = 0.5 * two_j;
    Matrix s_plus = Matrix::Zero(d, d);
    Matrix s3 = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        double m = j - i;
        s3(i, i) = m;
        if (i > 0)  // S+ raises m: e_i -> e_{i-1}
            s_plus(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Matrix s_minus = s_plus.adjoint();
    SpinRep rep;
    rep.two_j = two_j;
    rep.s1 = 0.5 * (s_plus + s_minus);
    rep.s2 = -0.5 * kI * (s_plus - s_minus);
    rep.s3 = s3;
    return rep;
}

inline Matrix spin_dot(const SpinRep& rep, const Vector3& n) {
    return n.x() * rep.s1 + n.y() * rep.s2 + n.z() * rep.s3;
}

// Rotation by pi about the 2-axis, entrywise (-1)^(j+m) delta_{m',-m}.
// The exponent j + m is an integer for every m in the lattice, so entries
// are exact. Equals exp(-i pi S2) times (-1)^(2j); the relative sign is a
// pure phase convention and cancels in every symmetry constraint.
inline Matrix r2_matrix(int two_j) {
    const int d = two_j + 1;
    Matrix r = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        // column index i has m = j - i; the row picks m' = -m
        int row = two_j - i;
        int exponent = two_j - i;  // j + m = 2j - i
        r(row, i) = (exponent % 2 == 0) ? 1.0 : -1.0;
    }
    return r;
}

struct HelicitySpinor {
    int sigma_two = 0;
    Vector3 direction;
    Vector components;
};

// Basis index of helicity sigma (sigma_two = 2*sigma) in the m-ordering.
inline int helicity_index(int two_j, int sigma_two) {
    if (std::abs(sigma_two) > two_j || (two_j - sigma_two) % 2 != 0)
        throw ValidationError("helicity outside the spin-j lattice");
    return (two_j - sigma_two) / 2;
}

// Spinor with (n.S) xi = sigma xi, phase fixed by the z-y-z rotation
// convention xi = exp(-i phi S3) exp(-i theta S2) e_sigma.
inline HelicitySpinor helicity_spinor(const SpinRep& rep, int sigma_two,
                                      const Vector3& direction) {
    double n = direction.norm();
    if (n < 1e-14) throw ValidationError("helicity undefined for zero direction");
    Vector3 d = direction / n;
    double theta = std::acos(std::clamp(d.z(), -1.0, 1.0));
    double phi = std::atan2(d.y(), d.x());

    int idx = helicity_index(rep.two_j, sigma_two);
    Vector e = Vector::Zero(rep.dim());
    e(idx) = 1.0;
    Vector xi = hermitian_exp(rep.s2, -kI * theta) * e;
    for (int i = 0; i < rep.dim(); ++i)
        xi(i) *= std::exp(-kI * phi * rep.m_of(i));

    HelicitySpinor out;
    out.sigma_two = sigma_two;
    out.direction = d;
    out.components = xi / xi.norm();
    return out;
}

// f(p^2 I, p.S) via the spectral decomposition of p.S: eigenvalue p*sigma
// on the helicity spinor xi_sigma. At p = 0 every eigenvalue is 0 and the
// result is f(0,0) I in the S3 basis.
inline Matrix scalar_func_of_pdotS(const RationalFunc2& f, const Vector3& p_vec,
                                   const SpinRep& rep,
                                   double pole_tol = kDefaultPoleTol) {
    const double p = p_vec.norm();
    const int d = rep.dim();
    if (p < 1e-14) {
        Complex c = f.evaluate(0.0, 0.0, pole_tol);
        return c * Matrix::Identity(d, d);
    }
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        int sigma_two = rep.two_j - 2 * i;
        auto xi = helicity_spinor(rep, sigma_two, p_vec).components;
        Complex value = f.evaluate(p * p, p * 0.5 * sigma_two, pole_tol);
        out += value * (xi * xi.adjoint());
    }
    return out;
}

}  // namespace spinstat
