#include <catch2/catch_amalgamated.hpp>

#include "spinstat/analytic.hpp"
#include "spinstat/catalog.hpp"

using namespace spinstat;

TEST_CASE("catalog_get") {
    SECTION("dirac reproduces the printed M(p) at p = 3z") {
        auto entry = catalog_get("dirac");
        auto f = build(entry.spec);
        Vector3 p(0, 0, 3);
        REQUIRE(max_abs(m_matrix(f, p) - entry.reference_m(p)) < 1e-12);
    }
    SECTION("schroedinger M- is the zero function") {
        auto entry = catalog_get("schroedinger", 1);
        REQUIRE(entry.spec.m_minus.is_zero());
        REQUIRE(entry.spec.two_j == 1);
        auto spin2 = catalog_get("schroedinger", 4);
        REQUIRE(spin2.spec.two_j == 4);
    }
    SECTION("klein-gordon blocks solve the printed diagonal") {
        // M+ = (M11 + M22)/2, M- = (M11 - M22)/2 for j = 0
        auto entry = catalog_get("klein-gordon", -1, {{"m0", 4}});
        auto m11 = parse_expr("x + 16");
        auto m22 = parse_expr("1");
        auto half = RationalFunc2::constant(Rational(1, 2));
        REQUIRE(entry.spec.m_plus == (m11 + m22) * half);
        REQUIRE(entry.spec.m_minus == (m11 - m22) * half);
    }
    SECTION("defaults and overrides") {
        auto entry = catalog_get("bdg");
        REQUIRE(entry.spec.params.at("m0") == 1);
        REQUIRE(entry.spec.params.at("mu") == 0);
        REQUIRE(entry.spec.params.at("delta") == 1);
        auto heavy = catalog_get("bdg", -1, {{"delta", Rational(3, 2)}});
        REQUIRE(heavy.spec.params.at("delta") == Rational(3, 2));
    }
    SECTION("unknown name") {
        REQUIRE_THROWS_AS(catalog_get("maxwell"), ValidationError);
    }
}

TEST_CASE("catalog reference forms and symmetries") {
    auto momenta = sample_momenta(8, 0);
    for (const char* name : {"klein-gordon", "dirac", "proca", "schroedinger"}) {
        auto entry = catalog_get(name);
        auto rep = verify_reference_form(entry, momenta);
        INFO(name << ": M residual " << rep.max_m_residual
                  << ", symmetry residual " << rep.symmetry.max_residual());
        REQUIRE(rep.max_m_residual < 1e-12);
        REQUIRE(rep.symmetry.pass);
    }
    SECTION("proca notes record the eliminated variable") {
        auto entry = catalog_get("proca");
        REQUIRE(entry.notes.find("extra variable") != std::string::npos);
        REQUIRE_FALSE(entry.reference_m == nullptr);
    }
    SECTION("bdg has no printed reference") {
        auto entry = catalog_get("bdg");
        REQUIRE_THROWS_AS(verify_reference_form(entry, momenta),
                          ValidationError);
        REQUIRE(verify_symmetries(build(entry.spec), momenta).pass);
    }
}

TEST_CASE("catalog golden pipeline table") {
    struct Golden {
        const char* name;
        Statistics verdict;
        int lambda_dim;
        int finite_branch_points;  // at m0 = 1 defaults
    };
    const Golden golden[] = {
        {"klein-gordon", Statistics::Bose, 1, 2},
        {"dirac", Statistics::Fermi, 1, 2},
        {"proca", Statistics::Bose, 1, 2},
        {"schroedinger", Statistics::Arbitrary, 2, 0},
        {"bdg", Statistics::Fermi, 1, 4},
    };
    for (const auto& g : golden) {
        auto entry = catalog_get(g.name);
        auto verdict = decide_statistics(entry.spec);
        INFO(g.name);
        REQUIRE(verdict.kind == g.verdict);
        REQUIRE(verdict.lambda_dimension == g.lambda_dim);
        int sigma_two = entry.spec.two_j % 2 == 0 ? 0 : 1;
        auto bp = branch_points(entry.spec, sigma_two);
        REQUIRE(static_cast<int>(bp.finite.size()) == g.finite_branch_points);
        for (const auto& point : bp.finite) REQUIRE(point.monodromy_confirmed);
    }
    SECTION("massive branch points sit at +/- i m0") {
        for (const char* name : {"klein-gordon", "dirac", "proca"}) {
            auto entry = catalog_get(name, -1, {{"m0", 4}});
            int sigma_two = entry.spec.two_j % 2 == 0 ? 0 : 1;
            auto bp = branch_points(entry.spec, sigma_two);
            REQUIRE(bp.finite.size() == 2);
            REQUIRE(std::abs(bp.finite[0].location - Complex(0, -4)) < 1e-6);
            REQUIRE(std::abs(bp.finite[1].location - Complex(0, 4)) < 1e-6);
        }
    }
}
