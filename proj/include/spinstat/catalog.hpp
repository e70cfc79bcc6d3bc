#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinstat/expr.hpp"
#include "spinstat/field.hpp"

namespace spinstat {

// A built-in field with an optional reference evaluator for the printed
// M(p) it was derived from.
struct CatalogEntry {
    std::string name;
    FieldSpec spec;
    // reference M(p) built directly from the familiar form, where one exists
    std::function<Matrix(const Vector3&)> reference_m;
    std::string notes;
};

inline std::vector<std::string> catalog_names() {
    return {"klein-gordon", "dirac", "proca", "schroedinger", "bdg"};
}

namespace detail {

inline Rational param_or(const ParamMap& params, const std::string& name,
                         const Rational& fallback) {
    auto it = params.find(name);
    return it == params.end() ? fallback : it->second;
}

}  // namespace detail

// Catalog lookup. `two_j` selects the spin of the schroedinger family
// (ignored elsewhere); parameters default to m0 = 1, mu = 0, delta = 1.
inline CatalogEntry catalog_get(const std::string& name, int two_j = -1,
                                const ParamMap& overrides = {}) {
    CatalogEntry entry;
    entry.name = name;
    ParamMap params;
    params["m0"] = detail::param_or(overrides, "m0", 1);
    params["mu"] = detail::param_or(overrides, "mu", 0);
    params["delta"] = detail::param_or(overrides, "delta", 1);
    const double m0 = to_double(params.at("m0"));
    const double mu = to_double(params.at("mu"));

    if (name == "klein-gordon") {
        entry.spec.two_j = 0;
        entry.spec.m_plus = parse_expr("(x + m0^2 + 1)/2", params);
        entry.spec.m_minus = parse_expr("(x + m0^2 - 1)/2", params);
        entry.reference_m = [m0](const Vector3& p) {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = p.squaredNorm() + m0 * m0;
            m(1, 1) = 1.0;
            return m;
        };
        entry.notes = "first-order doubling of the scalar wave equation";
    } else if (name == "dirac") {
        entry.spec.two_j = 1;
        entry.spec.m_plus = parse_expr("m0", params);
        entry.spec.m_minus = parse_expr("2*y");
        entry.reference_m = [m0](const Vector3& p) {
            SpinRep rep = spin_matrices(1);
            Matrix psigma = 2.0 * spin_dot(rep, p);
            Matrix m = Matrix::Zero(4, 4);
            m.topLeftCorner(2, 2) = m0 * Matrix::Identity(2, 2);
            m.bottomRightCorner(2, 2) = m0 * Matrix::Identity(2, 2);
            m.topRightCorner(2, 2) = psigma;
            m.bottomLeftCorner(2, 2) = -psigma;
            return m;
        };
        entry.notes = "four-component spinor field in the canonical basis";
    } else if (name == "proca") {
        entry.spec.two_j = 2;
        entry.spec.m_plus = parse_expr("(x + m0^2 + 1)/2", params);
        entry.spec.m_minus = parse_expr("(1 - m0^2 - x)/2", params);
        entry.reference_m = [m0](const Vector3& p) {
            Matrix m = Matrix::Zero(6, 6);
            m.topLeftCorner(3, 3) =
                (p.squaredNorm() + m0 * m0) * Matrix::Identity(3, 3);
            m.bottomRightCorner(3, 3) = Matrix::Identity(3, 3);
            return m;
        };
        entry.notes =
            "massive vector field; the scalar potential is the eliminated "
            "extra variable i dt (p.A)/(p^2 + m0^2) and is catalog metadata "
            "only";
    } else if (name == "schroedinger") {
        entry.spec.two_j = two_j >= 0 ? two_j : 1;
        entry.spec.m_plus = parse_expr("x/(2*m0) + mu", params);
        entry.spec.m_minus = parse_expr("0");
        const int d = entry.spec.two_j + 1;
        entry.reference_m = [m0, mu, d](const Vector3& p) {
            double value = p.squaredNorm() / (2.0 * m0) + mu;
            return Matrix(value * Matrix::Identity(2 * d, 2 * d));
        };
        entry.notes =
            "doubled (psi, psi*/rotated) form; the component map from the "
            "single-spinor wavefunction is psi = (psi_s + R2 psi_s*, "
            "psi_s - R2 psi_s*) and is not implemented as a transform";
        entry.spec.neutral = true;
    } else if (name == "bdg") {
        entry.spec.two_j = 1;
        entry.spec.m_plus = parse_expr("x/(2*m0) + mu", params);
        entry.spec.m_minus = parse_expr("delta", params);
        entry.notes =
            "quasiparticle doubling with a rotationally invariant pairing "
            "amplitude entering as the M- block";
    } else {
        throw ValidationError("unknown catalog name '" + name +
                              "' (expected one of: klein-gordon, dirac, "
                              "proca, schroedinger, bdg)");
    }
    entry.spec.params = params;
    return entry;
}

struct Table1Report {
    double max_m_residual = 0;
    SymmetryReport symmetry;
    bool pass = false;
};

// Compare the assembled M(p) against the printed reference and rerun the
// full symmetry verification.
inline Table1Report verify_reference_form(const CatalogEntry& entry,
                                          std::span<const Vector3> p_samples,
                                          double tol = 1e-10) {
    if (!entry.reference_m)
        throw ValidationError("catalog entry '" + entry.name +
                              "' has no printed reference form");
    Table1Report out;
    CanonicalField f = build(entry.spec);
    for (const Vector3& p : p_samples)
        out.max_m_residual = std::max(
            out.max_m_residual, max_abs(m_matrix(f, p) - entry.reference_m(p)));
    out.symmetry = verify_symmetries(f, p_samples, tol);
    out.pass = out.max_m_residual < tol && out.symmetry.pass;
    return out;
}

}  // namespace spinstat
