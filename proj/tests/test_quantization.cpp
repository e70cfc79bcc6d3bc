#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spinstat/expr.hpp"
#include "spinstat/quantization.hpp"
#include "support/random_specs.hpp"

using namespace spinstat;
using Catch::Approx;

namespace {

FieldSpec dirac_like(Rational m0 = 4) {
    FieldSpec s;
    s.two_j = 1;
    s.params = {{"m0", m0}};
    s.m_plus = parse_expr("m0", s.params);
    s.m_minus = parse_expr("2*y");
    return s;
}

FieldSpec kg_like(Rational m0 = 4) {
    FieldSpec s;
    s.two_j = 0;
    s.params = {{"m0", m0}};
    s.m_plus = parse_expr("(x + m0^2 + 1)/2", s.params);
    s.m_minus = parse_expr("(x + m0^2 - 1)/2", s.params);
    return s;
}

FieldSpec proca_like(Rational m0 = 4) {
    FieldSpec s;
    s.two_j = 2;
    s.params = {{"m0", m0}};
    s.m_plus = parse_expr("(x + m0^2 + 1)/2", s.params);
    s.m_minus = parse_expr("(1 - m0^2 - x)/2", s.params);
    return s;
}

FieldSpec schroedinger_like(int two_j) {
    FieldSpec s;
    s.two_j = two_j;
    s.params = {{"m0", 1}, {"mu", 0}};
    s.m_plus = parse_expr("x/(2*m0) + mu", s.params);
    s.m_minus = parse_expr("0");
    return s;
}

FieldSpec bdg_like() {
    FieldSpec s;
    s.two_j = 1;
    s.params = {{"m0", 1}, {"mu", 0}, {"delta", 1}};
    s.m_plus = parse_expr("x/(2*m0) + mu", s.params);
    s.m_minus = parse_expr("delta", s.params);
    return s;
}

// residuals of the three Hermiticity constraints at a fresh momentum
double lambda_constraint_residual(const CanonicalField& f, const Matrix& lam,
                                  const Vector3& p) {
    Matrix a = detail::block2(scalar_func_of_pdotS(f.spec.m_plus, p, f.rep), 1, 0, 0, 1);
    Matrix b = detail::block2(scalar_func_of_pdotS(f.spec.m_minus, p, f.rep), 1, 0, 0, 1);
    Matrix h1 = lam * f.omega;
    Matrix h2 = a * lam;
    Matrix h3 = b * lam * f.j_matrix;
    double r = max_abs(h1 - h1.adjoint());
    r = std::max(r, max_abs(h2 - h2.adjoint()));
    r = std::max(r, max_abs(h3 - h3.adjoint()));
    r = std::max(r, max_abs(lam.conjugate() - lam));
    return r;
}

}  // namespace

TEST_CASE("solve_lambda classification") {
    SECTION("Dirac: unique off-diagonal Lambda") {
        auto f = build(dirac_like());
        auto lam = solve_lambda(f);
        REQUIRE(lam.dimension == 1);
        REQUIRE(lam.canonical[0] == LambdaBlocks{0, 1, 1, 0});
    }
    SECTION("Klein-Gordon: unique identity Lambda") {
        auto f = build(kg_like());
        auto lam = solve_lambda(f);
        REQUIRE(lam.dimension == 1);
        REQUIRE(lam.canonical[0] == LambdaBlocks{1, 0, 0, 1});
    }
    SECTION("Proca: unique identity Lambda") {
        auto f = build(proca_like());
        auto lam = solve_lambda(f);
        REQUIRE(lam.dimension == 1);
        REQUIRE(lam.canonical[0] == LambdaBlocks{1, 0, 0, 1});
    }
    SECTION("Schroedinger: two-dimensional space with the canonical pair") {
        for (int two_j : {1, 2}) {
            auto f = build(schroedinger_like(two_j));
            auto lam = solve_lambda(f);
            REQUIRE(lam.dimension == 2);
            REQUIRE(lam.canonical.size() == 2);
            REQUIRE(lam.canonical[0] == LambdaBlocks{1, 0, 0, 1});
            REQUIRE(lam.canonical[1] == LambdaBlocks{0, 1, 1, 0});
        }
    }
    SECTION("every basis element satisfies the constraints at fresh momenta") {
        for (auto spec : {dirac_like(), kg_like(), proca_like(),
                          schroedinger_like(2), bdg_like()}) {
            auto f = build(spec);
            auto lam = solve_lambda(f);
            for (const auto& blocks : lam.basis) {
                Matrix l = lambda_from_blocks(blocks, f.block_dim());
                REQUIRE(lambda_constraint_residual(f, l, Vector3(0.7, -1.4, 2.2)) <
                        1e-8);
            }
        }
    }
    SECTION("invariant under common positive rescaling of M+/-") {
        auto spec = dirac_like();
        auto scale = RationalFunc2::constant(Rational(7, 2));
        FieldSpec scaled = spec;
        scaled.m_plus = spec.m_plus * scale;
        scaled.m_minus = spec.m_minus * scale;
        auto a = solve_lambda(build(spec));
        auto b = solve_lambda(build(scaled));
        REQUIRE(a.dimension == b.dimension);
        REQUIRE(a.canonical == b.canonical);
    }
}

TEST_CASE("hamiltonian_coefficients") {
    auto p = Vector3(0.8, -1.1, 2.0);
    SECTION("A equals the mode energy (normalization identity)") {
        for (auto spec : {dirac_like(), kg_like(), proca_like(), bdg_like()}) {
            auto f = build(spec);
            auto lam = solve_lambda(f);
            Matrix lambda = lam.canonical_matrices[0];
            for (int i = 0; i <= spec.two_j; ++i) {
                auto mode = eigenvectors(f, p, spec.two_j - 2 * i);
                auto [a, b] = hamiltonian_coefficients(f, lambda, mode);
                REQUIRE(a == Approx(mode.energy).epsilon(1e-9));
            }
        }
    }
    SECTION("Dirac: B = -E; Klein-Gordon: B = +E") {
        auto fd = build(dirac_like());
        auto ld = solve_lambda(fd).canonical_matrices[0];
        auto mode_d = eigenvectors(fd, p, 1);
        auto [ad, bd] = hamiltonian_coefficients(fd, ld, mode_d);
        double e_anti_d = energy(fd.spec, p.norm(), -1);
        REQUIRE(bd == Approx(-e_anti_d).epsilon(1e-9));

        auto fk = build(kg_like());
        auto lk = solve_lambda(fk).canonical_matrices[0];
        auto mode_k = eigenvectors(fk, p, 0);
        auto [ak, bk] = hamiltonian_coefficients(fk, lk, mode_k);
        REQUIRE(bk == Approx(mode_k.energy).epsilon(1e-9));
    }
    SECTION("a Lambda outside the solution space is flagged") {
        auto f = build(dirac_like());
        Matrix bad = lambda_from_blocks({1, 0, 0, -1}, f.block_dim());
        auto mode = eigenvectors(f, p, 1);
        REQUIRE_THROWS_AS(hamiltonian_coefficients(f, bad, mode), InternalError);
    }
    SECTION("coefficients are independent of the helicity spinor phase") {
        auto f = build(bdg_like());
        Matrix lambda = solve_lambda(f).canonical_matrices[0];
        Vector xi = helicity_spinor(f.rep, 1, p).components;
        auto mode_a = detail::mode_from_spinor(f, p, 1, xi);
        Vector xi_phased = std::exp(kI * 1.234) * xi;
        auto mode_b = detail::mode_from_spinor(f, p, 1, xi_phased);
        auto [a1, b1] = hamiltonian_coefficients(f, lambda, mode_a);
        auto [a2, b2] = hamiltonian_coefficients(f, lambda, mode_b);
        REQUIRE(a1 == Approx(a2).epsilon(1e-12));
        REQUIRE(b1 == Approx(b2).epsilon(1e-12));
        REQUIRE(mode_a.energy == mode_b.energy);
    }
}

TEST_CASE("fock_oracle") {
    SECTION("positive B with commutators: bounded, ground energy B") {
        REQUIRE(fock_oracle(1, 1, Statistics::Bose, 8));
        REQUIRE(fock_min_eigenvalue(1, 1, Statistics::Bose, 8) == Approx(1.0));
    }
    SECTION("negative B with commutators: unbounded, scales with cutoff") {
        REQUIRE_FALSE(fock_oracle(1, -1, Statistics::Bose, 8));
        REQUIRE(fock_min_eigenvalue(1, -1, Statistics::Bose, 8) ==
                Approx(-9.0));
        REQUIRE(fock_min_eigenvalue(1, -1, Statistics::Bose, 16) ==
                Approx(-17.0));
    }
    SECTION("negative B with anticommutators: bounded at -1") {
        REQUIRE(fock_oracle(1, -1, Statistics::Fermi, 8));
        REQUIRE(fock_min_eigenvalue(1, -1, Statistics::Fermi, 8) ==
                Approx(-1.0));
    }
    SECTION("cutoff precondition") {
        REQUIRE_THROWS_AS(fock_oracle(1, 1, Statistics::Bose, 1),
                          ValidationError);
    }
}

TEST_CASE("check_causality") {
    auto momenta = sample_momenta(4, 9, 0.5, 4.0);
    SECTION("Dirac: anticommutators pass, commutators fail") {
        auto f = build(dirac_like());
        Matrix lambda = solve_lambda(f).canonical_matrices[0];
        auto right = check_causality(f, lambda, Statistics::Fermi, momenta);
        REQUIRE(right.pass);
        REQUIRE(right.max_residual < 1e-9);
        auto wrong = check_causality(f, lambda, Statistics::Bose, momenta);
        REQUIRE_FALSE(wrong.pass);
        REQUIRE(wrong.max_residual > 0.1);
    }
    SECTION("Klein-Gordon: commutators pass") {
        auto f = build(kg_like());
        Matrix lambda = solve_lambda(f).canonical_matrices[0];
        REQUIRE(check_causality(f, lambda, Statistics::Bose, momenta).pass);
        REQUIRE_FALSE(check_causality(f, lambda, Statistics::Fermi, momenta).pass);
    }
    SECTION("Schroedinger: either statistics with its matching Lambda") {
        auto f = build(schroedinger_like(1));
        auto lam = solve_lambda(f);
        REQUIRE(check_causality(f, lam.canonical_matrices[0], Statistics::Bose,
                                momenta)
                    .pass);
        REQUIRE(check_causality(f, lam.canonical_matrices[1], Statistics::Fermi,
                                momenta)
                    .pass);
        REQUIRE_FALSE(check_causality(f, lam.canonical_matrices[0],
                                      Statistics::Fermi, momenta)
                          .pass);
    }
}

TEST_CASE("decide_statistics") {
    SECTION("catalog verdicts") {
        REQUIRE(decide_statistics(kg_like()).kind == Statistics::Bose);
        REQUIRE(decide_statistics(dirac_like()).kind == Statistics::Fermi);
        REQUIRE(decide_statistics(proca_like()).kind == Statistics::Bose);
        REQUIRE(decide_statistics(schroedinger_like(1)).kind ==
                Statistics::Arbitrary);
        REQUIRE(decide_statistics(schroedinger_like(2)).kind ==
                Statistics::Arbitrary);
        REQUIRE(decide_statistics(bdg_like()).kind == Statistics::Fermi);
    }
    SECTION("evidence is internally consistent") {
        auto v = decide_statistics(dirac_like());
        REQUIRE(v.lambda_dimension == 1);
        REQUIRE(v.evidence.size() == 1);
        const auto& ev = v.evidence[0];
        REQUIRE(ev.modes.size() >= 20);
        for (const auto& m : ev.modes) REQUIRE(m.b_coeff < 0);
        REQUIRE(ev.fock_bounded);
        REQUIRE(ev.causality_pass);
        REQUIRE(ev.wrong_statistics_residual > 0.1);
    }
    SECTION("arbitrary verdict carries both branches") {
        auto v = decide_statistics(schroedinger_like(1));
        REQUIRE(v.evidence.size() == 2);
        REQUIRE(v.evidence[0].statistics == Statistics::Bose);
        REQUIRE(v.evidence[1].statistics == Statistics::Fermi);
        REQUIRE(v.evidence[0].causality_pass);
        REQUIRE(v.evidence[1].causality_pass);
    }
}

TEST_CASE("spin parity forces the statistics for random specs") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 12; ++k) {
        int two_j = k % 7;
        auto spec = testing::random_valid_spec(rng, two_j);
        INFO("two_j = " << two_j
                        << ", m_plus = " << spec.m_plus.to_expression()
                        << ", m_minus = " << spec.m_minus.to_expression());
        auto v = decide_statistics(spec, 0, 8);
        Statistics want =
            two_j % 2 == 0 ? Statistics::Bose : Statistics::Fermi;
        REQUIRE(v.kind == want);
    }
}
