#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spinstat/spectrum.hpp"

namespace spinstat {

enum class Statistics { Bose, Fermi, Arbitrary };

inline std::string to_string(Statistics s) {
    switch (s) {
        case Statistics::Bose: return "bose";
        case Statistics::Fermi: return "fermi";
        case Statistics::Arbitrary: return "arbitrary";
    }
    return "?";
}

// Block quadruple (alpha, beta, gamma, delta) of a rotationally invariant
// Lambda = [[alpha I, beta I], [gamma I, delta I]].
using LambdaBlocks = std::array<double, 4>;

inline Matrix lambda_from_blocks(const LambdaBlocks& q, int block_dim) {
    Matrix id = Matrix::Identity(block_dim, block_dim);
    return detail::block2(id, q[0], q[1], q[2], q[3]);
}

// Solution space of the Lagrangian Hermiticity constraints.
struct LambdaSpace {
    int dimension = 0;
    std::vector<LambdaBlocks> basis;      // orthonormal over the quadruples
    std::vector<LambdaBlocks> canonical;  // sign-fixed representatives
    std::vector<Matrix> canonical_matrices;
};

namespace detail {

// Rows of the real linear system expressing: Lambda Omega Hermitian,
// M+ Lambda Hermitian, M- Lambda J Hermitian (at the sampled momenta),
// and Lambda* = Lambda. Unknowns are the 8 real/imag parts of the blocks.
inline Eigen::MatrixXd lambda_constraint_matrix(const CanonicalField& f,
                                                std::span<const Vector3> samples) {
    const int d = f.block_dim();

    // evaluate the residual map z -> stack of (X - X') for unit unknowns
    auto lambda_of = [&](int k, bool imag) {
        Matrix id = Matrix::Identity(d, d);
        Matrix lam = Matrix::Zero(2 * d, 2 * d);
        Complex c = imag ? Complex(0, 1) : Complex(1, 0);
        int row = (k / 2) * d, col = (k % 2) * d;
        lam.block(row, col, d, d) = c * id;
        return lam;
    };

    std::vector<Matrix> mplus_terms, mminus_terms;
    for (const Vector3& p : samples) {
        Matrix a = scalar_func_of_pdotS(f.spec.m_plus, p, f.rep);
        Matrix b = scalar_func_of_pdotS(f.spec.m_minus, p, f.rep);
        mplus_terms.push_back(detail::block2(a, 1, 0, 0, 1));
        mminus_terms.push_back(detail::block2(b, 1, 0, 0, 1));
    }

    // residual blocks per unit unknown
    std::vector<std::vector<Matrix>> residuals(8);
    for (int k = 0; k < 4; ++k) {
        for (int im = 0; im < 2; ++im) {
            Matrix lam = lambda_of(k, im == 1);
            auto& rs = residuals[static_cast<std::size_t>(2 * k + im)];
            Matrix lo = lam * f.omega;
            rs.push_back(lo - lo.adjoint());
            for (std::size_t s = 0; s < samples.size(); ++s) {
                Matrix h1 = mplus_terms[s] * lam;
                rs.push_back(h1 - h1.adjoint());
                Matrix h2 = mminus_terms[s] * lam * f.j_matrix;
                rs.push_back(h2 - h2.adjoint());
            }
            rs.push_back(lam.conjugate() - lam);  // Lambda* = Lambda
        }
    }

    const std::size_t blocks = residuals[0].size();
    const Eigen::Index entries = 2 * d * 2 * d;
    Eigen::MatrixXd rows(2 * static_cast<Eigen::Index>(blocks) * entries, 8);
    for (int col = 0; col < 8; ++col) {
        Eigen::Index r = 0;
        for (const Matrix& res : residuals[static_cast<std::size_t>(col)]) {
            for (Eigen::Index i = 0; i < res.rows(); ++i)
                for (Eigen::Index j = 0; j < res.cols(); ++j) {
                    rows(r++, col) = res(i, j).real();
                    rows(r++, col) = res(i, j).imag();
                }
        }
    }
    return rows;
}

inline LambdaBlocks blocks_from_unknowns(const Eigen::VectorXd& z) {
    // imaginary parts are forced to zero by the Lambda* = Lambda rows
    return {z(0), z(2), z(4), z(6)};
}

inline double imag_norm(const Eigen::VectorXd& z) {
    return std::max(std::max(std::abs(z(1)), std::abs(z(3))),
                    std::max(std::abs(z(5)), std::abs(z(7))));
}

}  // namespace detail

// Solve the Lambda constraint system by SVD null space over generic
// sampled momenta. Samples where M- is accidentally tiny are skipped so a
// nonzero M- function is never mistaken for zero (the authoritative zero
// test is RationalFunc2::is_zero).
inline LambdaSpace solve_lambda(const CanonicalField& f, std::uint64_t seed = 0) {
    const bool minus_is_zero = is_zero_on_rep(f.spec.m_minus, f.spec.two_j);
    std::vector<Vector3> samples;
    auto pool = sample_momenta(64, seed + 1);
    for (const Vector3& p : pool) {
        if (samples.size() >= 4) break;
        try {
            Matrix a = scalar_func_of_pdotS(f.spec.m_plus, p, f.rep);
            Matrix b = scalar_func_of_pdotS(f.spec.m_minus, p, f.rep);
            if (max_abs(a) < 1e-8) continue;
            if (!minus_is_zero && max_abs(b) < 1e-8 * (1.0 + max_abs(a)))
                continue;
            samples.push_back(p);
        } catch (const PoleError&) {
            continue;
        }
    }
    if (samples.size() < 4)
        throw ValidationError("could not find 4 generic pole-free momenta");

    Eigen::MatrixXd constraints = detail::lambda_constraint_matrix(f, samples);
    Eigen::MatrixXd null = nullspace(constraints, 1e-10);

    LambdaSpace out;
    out.dimension = static_cast<int>(null.cols());
    if (out.dimension == 0)
        throw InternalError(
            "Lambda constraint system has no solution; inconsistent spec or "
            "pole-contaminated sample");
    for (int c = 0; c < out.dimension; ++c) {
        Eigen::VectorXd z = null.col(c);
        if (detail::imag_norm(z) > 1e-9)
            throw InternalError("Lambda solution has imaginary block parts");
        out.basis.push_back(detail::blocks_from_unknowns(z));
    }

    const int d = f.block_dim();
    if (out.dimension == 1) {
        // fix the orientation: scale so the largest block entry is +1
        LambdaBlocks q = out.basis[0];
        double big = 0;
        for (double v : q)
            if (std::abs(v) > std::abs(big)) big = v;
        for (double& v : q) {
            v /= big;
            if (std::abs(v) < 1e-9) v = 0;
            if (std::abs(v - 1.0) < 1e-9) v = 1;
        }
        out.canonical.push_back(q);
        out.canonical_matrices.push_back(lambda_from_blocks(q, d));
    } else if (out.dimension == 2) {
        // canonical pair: bosonic identity and fermionic off-diagonal
        const LambdaBlocks id{1, 0, 0, 1}, flip{0, 1, 1, 0};
        Eigen::MatrixXd span(4, 2);
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < 4; ++i) span(i, c) = out.basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
        for (const auto& target : {id, flip}) {
            Eigen::Vector4d t(target[0], target[1], target[2], target[3]);
            Eigen::Vector2d coeff =
                span.colPivHouseholderQr().solve(t);
            if ((span * coeff - t).norm() > 1e-9)
                throw InternalError(
                    "two-dimensional Lambda space does not contain the "
                    "canonical pair");
            out.canonical.push_back(target);
            out.canonical_matrices.push_back(lambda_from_blocks(target, d));
        }
    }
    return out;
}

// Mode coefficients of the normal-ordered Hamiltonian: A multiplies a'a,
// B multiplies b b'. Also asserts that no a'b' cross terms survive.
inline std::pair<double, double> hamiltonian_coefficients(
    const CanonicalField& f, const Matrix& lambda, const ModeSolution& mode) {
    const Matrix lo = lambda * f.omega;
    Complex a_val = (mode.u.adjoint() * lo * mode.u)(0);
    ModeSolution anti = eigenvectors(f, -mode.p_vec, -mode.sigma_two);
    Complex b_val = (anti.v.adjoint() * lo * anti.v)(0);
    if (std::abs(a_val.imag()) > 1e-10 || std::abs(b_val.imag()) > 1e-10)
        throw InternalError(
            "non-real Hamiltonian coefficient: Lambda is outside the "
            "solution space");
    for (int i = 0; i <= f.spec.two_j; ++i) {
        int tau = f.spec.two_j - 2 * i;
        ModeSolution cross = eigenvectors(f, mode.p_vec, tau);
        Complex c = (mode.u.adjoint() * lo * cross.v)(0);
        if (std::abs(c) > 1e-10)
            throw InternalError("a'b' cross term survives in H");
    }
    return {mode.energy * a_val.real(), -anti.energy * b_val.real()};
}

// Truncated-Fock-space oracle for Hamiltonian positivity. Builds the
// single-mode ladder operators as matrices, assembles
// H = A a'a + B b b', and declares the spectrum unbounded below when the
// minimum eigenvalue keeps dropping as the cutoff doubles.
inline double fock_min_eigenvalue(double a_coeff, double b_coeff,
                                  Statistics statistics, int cutoff) {
    using RMatrix = Eigen::MatrixXd;
    RMatrix number_a, bbdag;
    if (statistics == Statistics::Fermi) {
        number_a = RMatrix::Zero(2, 2);
        number_a(1, 1) = 1;
        RMatrix b = RMatrix::Zero(2, 2);
        b(0, 1) = 1;
        bbdag = b * b.transpose();
    } else {
        // build on cutoff+2 states so the truncation artifact at the top
        // state stays outside the kept block
        const int n = cutoff + 2;
        RMatrix ladder = RMatrix::Zero(n, n);
        for (int k = 1; k < n; ++k) ladder(k - 1, k) = std::sqrt(double(k));
        RMatrix num_full = ladder.transpose() * ladder;
        RMatrix bbdag_full = ladder * ladder.transpose();
        number_a = num_full.topLeftCorner(cutoff + 1, cutoff + 1);
        bbdag = bbdag_full.topLeftCorner(cutoff + 1, cutoff + 1);
    }
    const Eigen::Index da = number_a.rows(), db = bbdag.rows();
    RMatrix h = a_coeff * kron(number_a, RMatrix::Identity(db, db)) +
                b_coeff * kron(RMatrix::Identity(da, da), bbdag);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline bool fock_oracle(double a_coeff, double b_coeff, Statistics statistics,
                        int cutoff) {
    if (cutoff < 2) throw ValidationError("fock_oracle needs cutoff >= 2");
    double lo = fock_min_eigenvalue(a_coeff, b_coeff, statistics, cutoff);
    double hi = fock_min_eigenvalue(a_coeff, b_coeff, statistics, 2 * cutoff);
    return hi >= lo - 1e-9 * (1.0 + std::abs(lo));
}

// Equal-time bracket completeness: at each sample p,
//   C(p) = sum_sigma [u(p,s) u(p,s)' + s v(p,s) v(p,s)'] Lambda Omega
// with s = +1 for anticommutators (Fermi), -1 for commutators (Bose),
// must equal the identity. This is the momentum-space integrand of the
// delta-function bracket after folding the antiparticle integral onto +p.
struct CausalityResult {
    bool pass = false;
    double max_residual = 0;
};

inline CausalityResult check_causality(const CanonicalField& f,
                                       const Matrix& lambda,
                                       Statistics statistics,
                                       std::span<const Vector3> p_samples,
                                       double tol = 1e-9) {
    if (statistics == Statistics::Arbitrary)
        throw ValidationError("causality check needs a concrete statistics");
    const double s = statistics == Statistics::Fermi ? 1.0 : -1.0;
    const Matrix lo = lambda * f.omega;
    const int dim = f.dim();
    CausalityResult out;
    for (const Vector3& p : p_samples) {
        Matrix c = Matrix::Zero(dim, dim);
        for (int i = 0; i <= f.spec.two_j; ++i) {
            int sigma_two = f.spec.two_j - 2 * i;
            ModeSolution mode = eigenvectors(f, p, sigma_two);
            c += (mode.u * mode.u.adjoint() + s * mode.v * mode.v.adjoint()) * lo;
        }
        out.max_residual = std::max(
            out.max_residual, max_abs(c - Matrix::Identity(dim, dim)));
    }
    out.pass = out.max_residual < tol;
    return out;
}

struct ModeCoefficient {
    Vector3 p_vec;
    int sigma_two = 0;
    double energy = 0;
    double a_coeff = 0;
    double b_coeff = 0;
};

// One statistics branch: the Lambda it was computed with plus evidence.
struct StatisticsEvidence {
    LambdaBlocks lambda_blocks{};
    Statistics statistics = Statistics::Bose;
    std::vector<ModeCoefficient> modes;
    bool fock_bounded = false;
    double causality_residual = 0;
    bool causality_pass = false;
    // residual of the bracket with the opposite (wrong) statistics
    double wrong_statistics_residual = 0;
};

struct StatisticsVerdict {
    Statistics kind = Statistics::Arbitrary;
    int lambda_dimension = 0;
    std::vector<StatisticsEvidence> evidence;  // one per admissible Lambda
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<ModeCoefficient> sample_mode_coefficients(
    const CanonicalField& f, const Matrix& lambda, int min_modes,
    std::uint64_t seed, std::vector<std::string>* warnings) {
    std::vector<ModeCoefficient> out;
    auto pool = sample_momenta(16 * min_modes, seed + 2, 0.5, 5.0);
    for (const Vector3& p : pool) {
        if (static_cast<int>(out.size()) >= min_modes) break;
        for (int i = 0; i <= f.spec.two_j; ++i) {
            int sigma_two = f.spec.two_j - 2 * i;
            try {
                ModeSolution mode = eigenvectors(f, p, sigma_two);
                auto [a, b] = hamiltonian_coefficients(f, lambda, mode);
                out.push_back({p, sigma_two, mode.energy, a, b});
            } catch (const GaplessModeError&) {
                if (warnings)
                    warnings->push_back("gapless mode skipped at |p| = " +
                                        std::to_string(p.norm()));
            } catch (const PoleError&) {
                if (warnings)
                    warnings->push_back("pole skipped at |p| = " +
                                        std::to_string(p.norm()));
            }
        }
    }
    if (static_cast<int>(out.size()) < min_modes)
        throw ValidationError("could not sample enough regular modes");
    return out;
}

inline StatisticsEvidence evaluate_branch(const CanonicalField& f,
                                          const LambdaBlocks& blocks,
                                          int min_modes, int fock_cutoff,
                                          std::uint64_t seed,
                                          std::vector<std::string>* warnings) {
    StatisticsEvidence ev;
    ev.lambda_blocks = blocks;
    Matrix lambda = lambda_from_blocks(blocks, f.block_dim());
    ev.modes = sample_mode_coefficients(f, lambda, min_modes, seed, warnings);

    bool all_pos = true, all_neg = true;
    for (const auto& m : ev.modes) {
        if (m.b_coeff <= 0) all_pos = false;
        if (m.b_coeff >= 0) all_neg = false;
    }
    if (!all_pos && !all_neg)
        throw InternalError("mixed-sign b b' coefficients across modes");
    ev.statistics = all_pos ? Statistics::Bose : Statistics::Fermi;

    ev.fock_bounded = fock_oracle(ev.modes.front().a_coeff,
                                  ev.modes.front().b_coeff, ev.statistics,
                                  fock_cutoff);
    auto causality_momenta = sample_momenta(4, seed + 3, 0.5, 5.0);
    CausalityResult right =
        check_causality(f, lambda, ev.statistics, causality_momenta);
    ev.causality_residual = right.max_residual;
    ev.causality_pass = right.pass;
    Statistics wrong = ev.statistics == Statistics::Bose ? Statistics::Fermi
                                                         : Statistics::Bose;
    ev.wrong_statistics_residual =
        check_causality(f, lambda, wrong, causality_momenta).max_residual;
    return ev;
}

}  // namespace detail

// The full statistics decision: Lambda space dimension, sign of the b b'
// coefficient, Fock-space positivity, and the causality bracket must all
// agree before a verdict is returned.
inline StatisticsVerdict decide_statistics(const FieldSpec& spec,
                                           std::uint64_t seed = 0,
                                           int min_modes = 20,
                                           int fock_cutoff = 8) {
    CanonicalField f = build(spec);
    LambdaSpace lam = solve_lambda(f, seed);
    const bool minus_zero = is_zero_on_rep(spec.m_minus, spec.two_j);
    if ((lam.dimension == 2) != minus_zero)
        throw InternalError(
            "trichotomy violated: Lambda dimension " +
            std::to_string(lam.dimension) + " with M- " +
            (minus_zero ? "== 0" : "!= 0"));

    StatisticsVerdict verdict;
    verdict.lambda_dimension = lam.dimension;
    for (const auto& blocks : lam.canonical) {
        auto ev = detail::evaluate_branch(f, blocks, min_modes, fock_cutoff,
                                          seed, &verdict.warnings);
        if (!ev.fock_bounded)
            throw InternalError("Fock oracle contradicts the sign of B");
        if (!ev.causality_pass)
            throw InternalError("causality bracket fails for the decided "
                                "statistics");
        verdict.evidence.push_back(std::move(ev));
    }

    if (lam.dimension == 2) {
        verdict.kind = Statistics::Arbitrary;
        // the two canonical Lagrangians must force opposite statistics
        if (verdict.evidence[0].statistics == verdict.evidence[1].statistics)
            throw InternalError("degenerate statistics across Lambda pair");
    } else {
        verdict.kind = verdict.evidence[0].statistics;
    }
    return verdict;
}

}  // namespace spinstat
