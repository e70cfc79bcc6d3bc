// Command-line front end: parse a field spec (file or catalog name), run
// the symmetry/statistics/branch-point pipeline, and emit text and JSON
// reports. Exit codes: 0 success, 2 parse error, 3 validation failure,
// 4 internal inconsistency.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "spinstat/report.hpp"

using namespace spinstat;

namespace {

struct Cli {
    std::string spec_path;
    std::string catalog;
    int two_j = -1;
    std::string m0, mu, delta;
    double tol = 1e-10;
    int samples = 8;
    std::uint64_t seed = 0;
    std::string json_path;
    bool tol_set = false, samples_set = false, seed_set = false;
};

void add_common(CLI::App* cmd, Cli& args) {
    cmd->add_option("spec", args.spec_path, "spec file (TOML key = value)");
    cmd->add_option("--catalog", args.catalog,
                    "built-in spec: klein-gordon, dirac, proca, schroedinger, bdg");
    cmd->add_option("--two-j", args.two_j,
                    "twice the spin (schroedinger catalog entry)");
    cmd->add_option("--m0", args.m0, "mass parameter (exact: 4, 1/2, 0.25)");
    cmd->add_option("--mu", args.mu, "chemical potential");
    cmd->add_option("--delta", args.delta, "pairing amplitude");
    cmd->add_option("--tol", args.tol, "residual tolerance")
        ->each([&](const std::string&) { args.tol_set = true; });
    cmd->add_option("--samples", args.samples, "number of sample momenta")
        ->each([&](const std::string&) { args.samples_set = true; });
    cmd->add_option("--seed", args.seed, "sampling seed")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--json", args.json_path, "write the full JSON report here");
}

std::pair<FieldSpec, AnalysisOptions> resolve_spec(const Cli& args) {
    AnalysisOptions options;
    FieldSpec spec;
    if (!args.catalog.empty()) {
        ParamMap overrides;
        if (!args.m0.empty()) overrides["m0"] = rational_from_string(args.m0);
        if (!args.mu.empty()) overrides["mu"] = rational_from_string(args.mu);
        if (!args.delta.empty())
            overrides["delta"] = rational_from_string(args.delta);
        spec = catalog_get(args.catalog, args.two_j, overrides).spec;
    } else if (!args.spec_path.empty()) {
        SpecFile file = load_spec_file(args.spec_path);
        spec = to_field_spec(file);
        options = analysis_options_from(file.options);
    } else {
        throw ValidationError("give a spec file or --catalog <name>");
    }
    if (args.tol_set) options.tol = args.tol;
    if (args.samples_set) options.samples = args.samples;
    if (args.seed_set) options.seed = args.seed;
    return {spec, options};
}

void write_json(const Cli& args, const FieldSpec& spec,
                const AnalysisOptions& options) {
    if (args.json_path.empty()) return;
    Json j = to_json(analyze(spec, options));
    if (args.json_path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(args.json_path);
    if (!out)
        throw ValidationError("cannot write '" + args.json_path + "'");
    out << j.dump(2) << "\n";
}

int run_check(const Cli& args) {
    auto [spec, options] = resolve_spec(args);
    CanonicalField f = build(spec);
    auto momenta = sample_momenta(options.samples, options.seed);
    SymmetryReport sym = verify_symmetries(f, momenta, options.tol);
    auto grid = default_p_grid();
    SpectrumValidation val = validate_spectrum(spec, grid);

    std::cout << "symmetry residuals (tolerance " << sym.tolerance << ")\n"
              << "  T on Omega        " << sym.t_omega << "\n"
              << "  C on Omega        " << sym.c_omega << "\n"
              << "  T on M(p)         " << sym.t_m << "\n"
              << "  C on M(p)         " << sym.c_m << "\n"
              << "  T on spin         " << sym.t_spin << "\n"
              << "  C on spin         " << sym.c_spin << "\n"
              << "  C involution      " << sym.c_involution << "\n"
              << "  energy hermiticity " << sym.m_hermiticity << "\n"
              << "  block commutator  " << sym.block_commutator << "\n"
              << "symmetry: " << (sym.pass ? "pass" : "FAIL") << "\n";
    std::cout << "spectral reality: " << (val.pass ? "pass" : "FAIL") << "\n";
    for (std::size_t i = 0; i < val.violating_intervals.size(); ++i)
        std::cout << "  E^2 < 0 for 2*sigma = " << val.violating_sigma_two[i]
                  << " on p in [" << val.violating_intervals[i].first << ", "
                  << val.violating_intervals[i].second << "]\n";
    if (!sym.pass || !val.pass) return 3;
    write_json(args, spec, options);
    return 0;
}

int run_statistics(const Cli& args) {
    auto [spec, options] = resolve_spec(args);
    VerdictReport report = analyze(spec, options);
    std::cout << "statistics: " << to_string(report.statistics.kind) << "\n";
    std::cout << "lambda dimension: " << report.statistics.lambda_dimension
              << "\n";
    for (const auto& ev : report.statistics.evidence) {
        std::cout << "  Lambda (alpha beta gamma delta) = ("
                  << ev.lambda_blocks[0] << " " << ev.lambda_blocks[1] << " "
                  << ev.lambda_blocks[2] << " " << ev.lambda_blocks[3]
                  << ") -> " << to_string(ev.statistics) << "\n"
                  << "    modes sampled: " << ev.modes.size()
                  << ", A = E and B " << (ev.statistics == Statistics::Bose
                                              ? "> 0"
                                              : "< 0")
                  << " on all of them\n"
                  << "    Fock space bounded below: "
                  << (ev.fock_bounded ? "yes" : "NO") << "\n"
                  << "    causality residual: " << ev.causality_residual
                  << " (wrong choice: " << ev.wrong_statistics_residual
                  << ")\n";
    }
    write_json(args, spec, options);
    return 0;
}

int run_branch_points(const Cli& args, std::optional<int> sigma_two,
                      const std::vector<double>& direction) {
    auto [spec, options] = resolve_spec(args);
    Vector3 dir(0, 0, 1);
    if (!direction.empty()) {
        if (direction.size() != 3 ||
            Vector3(direction[0], direction[1], direction[2]).norm() < 1e-12)
            throw ValidationError("--direction needs three components, not all zero");
        dir = Vector3(direction[0], direction[1], direction[2]);
    }
    std::vector<int> sigmas;
    if (sigma_two) {
        sigmas.push_back(*sigma_two);
    } else {
        for (int i = 0; i <= spec.two_j; ++i)
            sigmas.push_back(spec.two_j - 2 * i);
    }
    for (int s : sigmas) {
        auto rep = branch_points(spec, s, dir);
        std::cout << "2*sigma = " << s << ": E^2(p) = "
                  << rep.e_squared.to_expression() << "\n";
        if (rep.finite.empty())
            std::cout << "  finite branch points: none\n";
        for (const auto& bp : rep.finite)
            std::cout << "  " << bp.location.real() << (bp.location.imag() < 0 ? " - " : " + ")
                      << std::abs(bp.location.imag()) << "i  (multiplicity "
                      << bp.multiplicity << (bp.is_pole ? ", pole" : ", zero")
                      << ", monodromy "
                      << (bp.monodromy_confirmed ? "confirmed" : "NOT confirmed")
                      << ")\n";
        std::cout << "  branch point at infinity: "
                  << (rep.at_infinity ? "yes" : "no") << "\n";
    }
    write_json(args, spec, options);
    return 0;
}

int run_corollary(const Cli& args) {
    auto [spec, options] = resolve_spec(args);
    CorollaryReport rep = verify_corollary(spec, options.seed);
    std::cout << "branch points exist: "
              << (rep.branch_points_exist ? "yes" : "no") << "\n"
              << "M- nonzero on the representation: "
              << (rep.m_minus_nonzero ? "yes" : "no") << "\n"
              << "Lambda dimension: " << rep.lambda_dimension << "\n"
              << "verdict: " << to_string(rep.verdict) << "\n"
              << "links:\n"
              << "  branch points => M- nonzero:   "
              << (rep.link_branch_implies_minus ? "holds" : "VIOLATED") << "\n"
              << "  M- nonzero => unique Lambda:   "
              << (rep.link_minus_implies_unique ? "holds" : "VIOLATED") << "\n"
              << "  unique Lambda => spin parity:  "
              << (rep.link_unique_implies_parity ? "holds" : "VIOLATED")
              << "\n"
              << "corollary: " << (rep.pass() ? "pass" : "FAIL") << "\n";
    if (!rep.pass()) return 4;
    write_json(args, spec, options);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spinstat: build SU(2) x C x T invariant free fields, decide their "
        "statistics, and analyze the complex structure of their spectra"};
    app.require_subcommand(1);
    Cli args;

    CLI::App* check = app.add_subcommand(
        "check", "verify the symmetry constraints and spectral reality");
    add_common(check, args);

    CLI::App* statistics = app.add_subcommand(
        "statistics", "solve the Lagrangian constraints and decide the "
                      "particle statistics");
    add_common(statistics, args);

    CLI::App* branch = app.add_subcommand(
        "branch-points", "branch points of E(p) in the complex momentum plane");
    add_common(branch, args);
    std::optional<int> sigma_two;
    int sigma_arg = 0;
    CLI::Option* sigma_opt =
        branch->add_option("--sigma-two", sigma_arg, "restrict to one helicity "
                                                     "(twice the value)");
    std::vector<double> direction;
    branch->add_option("--direction", direction,
                       "momentum ray direction (three components)")
        ->expected(3);

    CLI::App* corollary = app.add_subcommand(
        "corollary", "check the implication chain from branch points to the "
                     "statistics verdict");
    add_common(corollary, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return run_check(args);
        if (statistics->parsed()) return run_statistics(args);
        if (branch->parsed()) {
            if (sigma_opt->count() > 0) sigma_two = sigma_arg;
            return run_branch_points(args, sigma_two, direction);
        }
        if (corollary->parsed()) return run_corollary(args);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "invalid spec: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
