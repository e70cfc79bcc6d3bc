#pragma once

#include <algorithm>
#include <utility>

#include "spinstat/field.hpp"

namespace spinstat {

inline constexpr double kGaplessTol = 1e-8;

namespace detail {

struct ModeValues {
    double m_plus;
    double m_minus;
    double scale;  // magnitude reference for tolerances
};

inline ModeValues mode_values(const FieldSpec& spec, double p, int sigma_two,
                              double pole_tol = kDefaultPoleTol) {
    Complex x(p * p, 0), y(p * 0.5 * sigma_two, 0);
    Complex mp = spec.m_plus.evaluate(x, y, pole_tol);
    Complex mm = spec.m_minus.evaluate(x, y, pole_tol);
    double scale = std::abs(mp) + std::abs(mm);
    return {mp.real(), mm.real(), scale};
}

}  // namespace detail

// E^2 = M+^2 + (-1)^(2j+1) M-^2 at (x, y) = (p^2, p sigma).
inline double energy_squared(const FieldSpec& spec, double p, int sigma_two) {
    auto v = detail::mode_values(spec, p, sigma_two);
    double sign = spec.two_j % 2 == 0 ? -1.0 : 1.0;  // (-1)^(2j+1)
    return v.m_plus * v.m_plus + sign * v.m_minus * v.m_minus;
}

// Positive branch of the closed-form spectrum.
inline double energy(const FieldSpec& spec, double p, int sigma_two) {
    auto v = detail::mode_values(spec, p, sigma_two);
    double sign = spec.two_j % 2 == 0 ? -1.0 : 1.0;
    double e2 = v.m_plus * v.m_plus + sign * v.m_minus * v.m_minus;
    double scale = v.scale * v.scale;
    if (e2 < -1e-12 * (scale + 1.0))
        throw SpectralRealityError(
            "E^2 < 0 at p = " + std::to_string(p) +
            ": |M+| < |M-| violates spectral reality for integer spin");
    return std::sqrt(std::max(e2, 0.0));
}

// One positive-energy mode: u with M u = E Omega u, v = J u with
// M v = -E Omega v, normalization sqrt(2E).
struct ModeSolution {
    Vector3 p_vec;
    int sigma_two = 0;
    double energy = 0;
    Vector u;
    Vector v;
    double normalization = 0;
    double residual = 0;  // max of the two wave-equation residuals
};

namespace detail {

// Closed-form eigenvector from a caller-supplied helicity spinor. The
// radical signs follow cos j pi + sin j pi: the printed form for
// j = 0, 1/2 mod 2, the block-swapped form for j = 1, 3/2 mod 2 (the
// only choice that actually solves the wave equation; see the residual
// check below, which is the arbiter).
inline ModeSolution mode_from_spinor(const CanonicalField& f,
                                     const Vector3& p_vec, int sigma_two,
                                     const Vector& xi) {
    const double p = p_vec.norm();
    auto vals = mode_values(f.spec, p, sigma_two);
    const double s2 = double(f.sin_jpi) * double(f.sin_jpi);
    const double outer =
        std::sqrt(vals.m_plus * vals.m_plus + vals.m_minus * vals.m_minus * s2);
    const double radical_sign = double(f.cos_jpi) + double(f.sin_jpi);
    const double e = energy(f.spec, p, sigma_two);
    if (e <= kGaplessTol * (vals.scale + 1.0))
        throw GaplessModeError("gapless mode: sqrt(2E) normalization degenerates");

    const double upper = std::sqrt(std::max(outer - radical_sign * vals.m_minus, 0.0));
    const double lower = std::sqrt(std::max(outer + radical_sign * vals.m_minus, 0.0));
    const int d = f.block_dim();
    Vector u(2 * d);
    u.head(d) = upper * xi;
    u.tail(d) = lower * xi;
    u /= std::sqrt(2.0 * e);

    ModeSolution mode;
    mode.p_vec = p_vec;
    mode.sigma_two = sigma_two;
    mode.energy = e;
    mode.normalization = std::sqrt(2.0 * e);
    mode.u = u;
    mode.v = f.j_matrix * u;

    Matrix m = m_matrix(f, p_vec);
    double scale = max_abs(m) + e;
    double ru = (m * mode.u - e * (f.omega * mode.u)).norm();
    double rv = (m * mode.v + e * (f.omega * mode.v)).norm();
    mode.residual = std::max(ru, rv) / (scale + 1.0);
    if (mode.residual > 1e-9)
        throw ValidationError(
            "closed-form eigenvector fails the wave equation (residual " +
            std::to_string(mode.residual) +
            "); the spec is outside the closed form's domain (M+ < 0?)");
    return mode;
}

}  // namespace detail

inline ModeSolution eigenvectors(const CanonicalField& f, const Vector3& p_vec,
                                 int sigma_two) {
    if (p_vec.norm() < 1e-14)
        throw ValidationError("helicity modes need a nonzero momentum");
    Vector xi = helicity_spinor(f.rep, sigma_two, p_vec).components;
    return detail::mode_from_spinor(f, p_vec, sigma_two, xi);
}

// Independent oracle: all 2(2j+1) eigenpairs of Omega^-1 M(p) (Omega is an
// involution, so Omega^-1 = Omega). Returns energies ascending; they must
// come in +/- pairs.
inline std::vector<std::pair<double, Vector>> solve_generalized_eigenproblem(
    const CanonicalField& f, const Vector3& p_vec) {
    Matrix m = m_matrix(f, p_vec);
    Matrix k = f.omega * m;
    Eigen::ComplexEigenSolver<Matrix> es(k);
    if (es.info() != Eigen::Success)
        throw InternalError("complex eigensolver failed");
    const double scale = max_abs(k) + 1.0;

    std::vector<std::pair<double, Vector>> out;
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        Complex lambda = es.eigenvalues()(i);
        Vector vec = es.eigenvectors().col(i);
        double resid = (m * vec - lambda * (f.omega * vec)).norm() / scale;
        if (resid > 1e-6)
            throw InternalError("generalized eigenproblem residual " +
                                std::to_string(resid));
        if (std::abs(lambda.imag()) > 1e-8 * scale)
            throw InternalError("complex energy from a real-spectrum pencil");
        out.emplace_back(lambda.real(), std::move(vec));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        double lo = out[i].first, hi = out[n - 1 - i].first;
        if (std::abs(lo + hi) > 1e-9 * (std::abs(hi) + scale))
            throw InternalError("energies do not come in +/- pairs");
    }
    return out;
}

// Spectral-reality scan: for integer j, E^2 = M+^2 - M-^2 must be
// nonnegative wherever the field propagates. Violations are reported as
// closed grid intervals.
struct SpectrumValidation {
    bool pass = true;
    std::vector<std::pair<double, double>> violating_intervals;
    std::vector<int> violating_sigma_two;
};

inline SpectrumValidation validate_spectrum(const FieldSpec& spec,
                                            std::span<const double> p_grid) {
    SpectrumValidation out;
    if (spec.two_j % 2 != 0) return out;  // sum of squares, always real
    for (int i = 0; i <= spec.two_j; ++i) {
        int sigma_two = spec.two_j - 2 * i;
        bool in_run = false;
        double run_start = 0, last = 0;
        for (double p : p_grid) {
            double e2;
            try {
                e2 = energy_squared(spec, p, sigma_two);
            } catch (const PoleError&) {
                continue;
            }
            if (e2 < 0) {
                out.pass = false;
                if (!in_run) {
                    in_run = true;
                    run_start = p;
                }
                last = p;
            } else if (in_run) {
                in_run = false;
                out.violating_intervals.emplace_back(run_start, last);
                out.violating_sigma_two.push_back(sigma_two);
            }
        }
        if (in_run) {
            out.violating_intervals.emplace_back(run_start, last);
            out.violating_sigma_two.push_back(sigma_two);
        }
    }
    return out;
}

inline std::vector<double> default_p_grid(int count = 64, double p_min = 0.05,
                                          double p_max = 12.0) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        grid.push_back(p_min * std::pow(p_max / p_min, double(i) / (count - 1)));
    return grid;
}

}  // namespace spinstat
