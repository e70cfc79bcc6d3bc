#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "spinstat/analytic.hpp"
#include "spinstat/catalog.hpp"
#include "spinstat/specfile.hpp"

namespace spinstat {

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
    double tol = 1e-10;
    int samples = 8;
    std::uint64_t seed = 0;
    int min_modes = 20;
    int fock_cutoff = 8;
    int spectrum_samples = 6;
};

inline AnalysisOptions analysis_options_from(const SpecFileOptions& o) {
    AnalysisOptions out;
    out.tol = o.tol;
    out.samples = o.samples;
    out.seed = o.seed;
    return out;
}

// Everything the pipeline derives from one spec.
struct VerdictReport {
    FieldSpec spec;
    SymmetryReport symmetry;
    SpectrumValidation spectral_reality;
    struct SpectrumSample {
        Vector3 p_vec;
        int sigma_two;
        double closed_form;
        double oracle;
    };
    std::vector<SpectrumSample> spectrum_samples;
    LambdaSpace lambda;
    StatisticsVerdict statistics;
    std::vector<BranchPointReport> branch_points;  // one per helicity
    CorollaryReport corollary;
    std::vector<std::string> warnings;
};

inline VerdictReport analyze(const FieldSpec& spec,
                             const AnalysisOptions& options = {}) {
    VerdictReport report;
    report.spec = spec;
    CanonicalField f = build(spec);

    auto momenta = sample_momenta(options.samples, options.seed);
    report.symmetry = verify_symmetries(f, momenta, options.tol);
    auto grid = default_p_grid();
    report.spectral_reality = validate_spectrum(spec, grid);

    auto sample_pool =
        sample_momenta(options.spectrum_samples, options.seed + 11, 0.3, 6.0);
    for (const Vector3& p : sample_pool) {
        std::vector<double> oracle_pos;
        try {
            auto pairs = solve_generalized_eigenproblem(f, p);
            for (const auto& [e, vec] : pairs)
                if (e > 0) oracle_pos.push_back(e);
            std::sort(oracle_pos.begin(), oracle_pos.end());
        } catch (const Error&) {
            continue;
        }
        std::vector<std::pair<double, int>> closed;
        for (int i = 0; i <= spec.two_j; ++i) {
            int sigma_two = spec.two_j - 2 * i;
            closed.emplace_back(energy(spec, p.norm(), sigma_two), sigma_two);
        }
        std::sort(closed.begin(), closed.end());
        for (std::size_t i = 0; i < closed.size() && i < oracle_pos.size(); ++i)
            report.spectrum_samples.push_back(
                {p, closed[i].second, closed[i].first, oracle_pos[i]});
    }

    report.statistics = decide_statistics(spec, options.seed,
                                          options.min_modes,
                                          options.fock_cutoff);
    report.lambda = solve_lambda(f, options.seed);
    for (int i = 0; i <= spec.two_j; ++i) {
        int sigma_two = spec.two_j - 2 * i;
        try {
            report.branch_points.push_back(branch_points(spec, sigma_two));
        } catch (const ValidationError& e) {
            report.warnings.push_back("branch points skipped for 2*sigma = " +
                                      std::to_string(sigma_two) + ": " +
                                      e.what());
        }
    }
    report.corollary = verify_corollary(spec, options.seed);
    for (const auto& w : report.statistics.warnings)
        report.warnings.push_back(w);
    report.warnings.push_back(
        "sign convention: the b b' coefficient computed directly from "
        "(u, v, Lambda, Omega) is B = (-1)^(2j) E on this family; the "
        "verdict follows that computed sign");
    return report;
}

// ---------------------------------------------------------------------------
// JSON serialization (schema-stable, numeric fields as doubles, exact
// rationals as strings).
// ---------------------------------------------------------------------------
namespace detail {

inline Json vec3_json(const Vector3& v) {
    return Json::array({v.x(), v.y(), v.z()});
}

inline Json complex_json(Complex z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

inline Json lambda_blocks_json(const LambdaBlocks& q) {
    return Json{{"alpha", q[0]}, {"beta", q[1]}, {"gamma", q[2]}, {"delta", q[3]}};
}

}  // namespace detail

inline Json to_json(const VerdictReport& r) {
    Json j;
    j["spec"] = {
        {"two_j", r.spec.two_j},
        {"m_plus", r.spec.m_plus.to_expression()},
        {"m_minus", r.spec.m_minus.to_expression()},
        {"neutral", r.spec.neutral},
    };
    Json params = Json::object();
    for (const auto& [k, v] : r.spec.params) params[k] = to_string(v);
    j["spec"]["params"] = params;

    j["symmetry"] = {
        {"pass", r.symmetry.pass},
        {"tolerance", r.symmetry.tolerance},
        {"residuals",
         {{"t_omega", r.symmetry.t_omega},
          {"c_omega", r.symmetry.c_omega},
          {"t_m", r.symmetry.t_m},
          {"c_m", r.symmetry.c_m},
          {"t_spin", r.symmetry.t_spin},
          {"c_spin", r.symmetry.c_spin},
          {"c_involution", r.symmetry.c_involution},
          {"energy_hermiticity", r.symmetry.m_hermiticity},
          {"block_commutator", r.symmetry.block_commutator}}},
    };

    j["spectral_reality"] = Json{{"pass", r.spectral_reality.pass}};
    Json intervals = Json::array();
    for (std::size_t i = 0; i < r.spectral_reality.violating_intervals.size(); ++i)
        intervals.push_back(
            {{"two_sigma", r.spectral_reality.violating_sigma_two[i]},
             {"from", r.spectral_reality.violating_intervals[i].first},
             {"to", r.spectral_reality.violating_intervals[i].second}});
    j["spectral_reality"]["violating_intervals"] = intervals;

    Json samples = Json::array();
    for (const auto& s : r.spectrum_samples)
        samples.push_back({{"p", detail::vec3_json(s.p_vec)},
                           {"two_sigma", s.sigma_two},
                           {"energy_closed_form", s.closed_form},
                           {"energy_oracle", s.oracle}});
    j["spectrum_samples"] = samples;

    j["lambda"] = Json{{"dimension", r.lambda.dimension}};
    Json canonical = Json::array();
    for (const auto& q : r.lambda.canonical)
        canonical.push_back(detail::lambda_blocks_json(q));
    j["lambda"]["canonical"] = canonical;

    j["statistics"] = Json{{"verdict", to_string(r.statistics.kind)},
                           {"lambda_dimension", r.statistics.lambda_dimension}};
    Json branches = Json::array();
    for (const auto& ev : r.statistics.evidence) {
        Json b;
        b["lambda"] = detail::lambda_blocks_json(ev.lambda_blocks);
        b["statistics"] = to_string(ev.statistics);
        Json modes = Json::array();
        for (const auto& m : ev.modes)
            modes.push_back({{"p", detail::vec3_json(m.p_vec)},
                             {"two_sigma", m.sigma_two},
                             {"energy", m.energy},
                             {"A", m.a_coeff},
                             {"B", m.b_coeff}});
        b["modes"] = modes;
        b["fock_bounded"] = ev.fock_bounded;
        b["causality"] = {{"pass", ev.causality_pass},
                          {"residual", ev.causality_residual},
                          {"wrong_choice_residual",
                           ev.wrong_statistics_residual}};
        branches.push_back(b);
    }
    j["statistics"]["branches"] = branches;

    Json bp = Json::array();
    for (const auto& rep : r.branch_points) {
        Json one;
        one["two_sigma"] = rep.sigma_two;
        one["direction"] = detail::vec3_json(rep.direction);
        one["e_squared"] = rep.e_squared.to_expression();
        Json finite = Json::array();
        for (const auto& point : rep.finite) {
            Json p = detail::complex_json(point.location);
            p["multiplicity"] = point.multiplicity;
            p["is_pole"] = point.is_pole;
            p["monodromy_confirmed"] = point.monodromy_confirmed;
            finite.push_back(p);
        }
        one["finite"] = finite;
        one["at_infinity"] = rep.at_infinity;
        bp.push_back(one);
    }
    j["branch_points"] = bp;

    j["corollary"] = {
        {"branch_points_exist", r.corollary.branch_points_exist},
        {"m_minus_nonzero", r.corollary.m_minus_nonzero},
        {"lambda_dimension", r.corollary.lambda_dimension},
        {"verdict", to_string(r.corollary.verdict)},
        {"links",
         Json::array(
             {{{"name", "branch_points_imply_m_minus"},
               {"holds", r.corollary.link_branch_implies_minus}},
              {{"name", "m_minus_implies_unique_lambda"},
               {"holds", r.corollary.link_minus_implies_unique}},
              {{"name", "unique_lambda_implies_spin_parity"},
               {"holds", r.corollary.link_unique_implies_parity}}})},
        {"pass", r.corollary.pass()},
    };

    j["warnings"] = r.warnings;
    return j;
}

// Tolerant comparison for golden-file tests: numerics within
// tol * (1 + max magnitude), everything else exact.
inline bool json_close(const Json& a, const Json& b, double tol = 1e-6) {
    if (a.is_number() && b.is_number()) {
        double x = a.get<double>(), y = b.get<double>();
        return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
    }
    if (a.type() != b.type()) return false;
    if (a.is_object()) {
        if (a.size() != b.size()) return false;
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) return false;
            if (!json_close(it.value(), b.at(it.key()), tol)) return false;
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_close(a[i], b[i], tol)) return false;
        return true;
    }
    return a == b;
}

}  // namespace spinstat
