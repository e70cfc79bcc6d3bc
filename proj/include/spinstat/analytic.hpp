#pragma once

#include <algorithm>
#include <vector>

#include "spinstat/quantization.hpp"

namespace spinstat {

// ---------------------------------------------------------------------------
// Polynomial roots: companion-matrix eigenvalues with cluster-based
// multiplicity estimation. Coefficients ascending in the degree.
// ---------------------------------------------------------------------------
inline std::vector<std::pair<Complex, int>> find_roots(
    std::vector<Complex> coeffs, double cluster_tol = 1e-7) {
    while (!coeffs.empty() && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2)
        throw ValidationError("find_roots needs degree >= 1");
    const int deg = static_cast<int>(coeffs.size()) - 1;
    Matrix companion = Matrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        companion(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
    Eigen::ComplexEigenSolver<Matrix> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw InternalError("companion eigensolver failed");

    std::vector<Complex> raw(es.eigenvalues().data(),
                             es.eigenvalues().data() + deg);
    std::vector<std::pair<Complex, int>> clusters;
    for (Complex r : raw) {
        bool merged = false;
        for (auto& [center, count] : clusters) {
            if (std::abs(r - center) <= cluster_tol * (1.0 + std::abs(center))) {
                center = (center * double(count) + r) / double(count + 1);
                ++count;
                merged = true;
                break;
            }
        }
        if (!merged) clusters.emplace_back(r, 1);
    }
    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    return clusters;
}

// Exact square-free decomposition (Yun): f = prod a_i^i with the a_i
// square-free and pairwise coprime. Returns (a_i, i) for deg a_i > 0.
inline std::vector<std::pair<Poly1, int>> square_free_decomposition(const Poly1& f) {
    std::vector<std::pair<Poly1, int>> out;
    if (f.degree() < 1) return out;
    Poly1 df = f.derivative();
    Poly1 g = Poly1::gcd(f, df);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    Poly1 c = Poly1::divmod(f, g).first;
    Poly1 d = Poly1::divmod(df, g).first - c.derivative();
    for (int i = 1; c.degree() > 0; ++i) {
        Poly1 a = Poly1::gcd(c, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        c = Poly1::divmod(c, a).first;
        d = Poly1::divmod(d, a).first - c.derivative();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monodromy: continue sqrt(q) around a circle; a genuine branch point
// returns the continuation to minus its start.
// ---------------------------------------------------------------------------
inline bool monodromy_check(const RationalFunc1& q, Complex center, double radius,
                            int n_points = 64) {
    if (!(radius > 0))
        throw ValidationError("monodromy contour radius underflow");
    Complex z0 = center + radius;
    Complex w = std::sqrt(q.evaluate(z0));
    Complex w0 = w;
    for (int k = 1; k <= n_points; ++k) {
        double angle = 2.0 * M_PI * k / n_points;
        Complex z = center + radius * Complex(std::cos(angle), std::sin(angle));
        Complex s = std::sqrt(q.evaluate(z));
        w = (std::abs(s - w) <= std::abs(-s - w)) ? s : -s;
    }
    double scale = std::abs(w0);
    if (scale == 0.0) throw ValidationError("monodromy start value vanished");
    if (std::abs(w + w0) <= 1e-6 * scale) return true;
    if (std::abs(w - w0) <= 1e-6 * scale) return false;
    throw ValidationError("monodromy continuation is numerically ambiguous");
}

// Radius-free overload: half the distance to the nearest other zero/pole.
inline bool monodromy_check(const RationalFunc1& q, Complex center) {
    std::vector<Complex> others;
    for (const Poly1* poly : {&q.numerator(), &q.denominator()}) {
        if (poly->degree() < 1) continue;
        for (auto& [root, mult] : find_roots(poly->complex_coefficients()))
            if (std::abs(root - center) > 1e-9 * (1.0 + std::abs(center)))
                others.push_back(root);
    }
    double radius = std::max(1.0, std::abs(center)) * 0.5;
    for (Complex o : others)
        radius = std::min(radius, 0.5 * std::abs(o - center));
    if (radius < 1e-10 * (1.0 + std::abs(center)))
        throw ValidationError("monodromy contour passes too near another singularity");
    return monodromy_check(q, center, radius);
}

// ---------------------------------------------------------------------------
// Branch points of E(p) along a helicity ray.
// ---------------------------------------------------------------------------
struct BranchPoint {
    Complex location;
    int multiplicity = 0;   // as a zero or pole of E^2
    bool is_pole = false;
    bool monodromy_confirmed = false;
};

struct BranchPointReport {
    int sigma_two = 0;
    Vector3 direction;
    RationalFunc1 e_squared;
    std::vector<BranchPoint> finite;
    bool at_infinity = false;

    bool any() const { return !finite.empty() || at_infinity; }
};

// E^2 restricted to the ray, reduced to coprime numerator/denominator.
inline RationalFunc1 energy_squared_on_ray(const FieldSpec& spec, int sigma_two) {
    RationalFunc2 minus_sq = spec.m_minus * spec.m_minus;
    RationalFunc2 e2 = spec.two_j % 2 == 0
                           ? spec.m_plus * spec.m_plus - minus_sq
                           : spec.m_plus * spec.m_plus + minus_sq;
    return restrict_to_ray(e2, Rational(sigma_two, 2));
}

// Zeros and poles of odd multiplicity are the finite branch points of
// sqrt(E^2); multiplicities come from the exact square-free decomposition,
// root locations from the companion matrix (those factors are square-free,
// so clustering is trivial), and each candidate is confirmed by monodromy.
inline BranchPointReport branch_points(const FieldSpec& spec, int sigma_two,
                                       const Vector3& direction = Vector3(0, 0, 1)) {
    helicity_index(spec.two_j, sigma_two);  // lattice check
    BranchPointReport report;
    report.sigma_two = sigma_two;
    report.direction = direction.norm() > 0 ? direction.normalized() : direction;
    report.e_squared = energy_squared_on_ray(spec, sigma_two);
    if (report.e_squared.is_zero())
        throw ValidationError("E^2 is identically zero on this ray");

    const Poly1& num = report.e_squared.numerator();
    const Poly1& den = report.e_squared.denominator();
    report.at_infinity = (num.degree() - den.degree()) % 2 != 0;

    for (bool pole : {false, true}) {
        const Poly1& poly = pole ? den : num;
        if (poly.degree() < 1) continue;
        for (const auto& [factor, mult] : square_free_decomposition(poly)) {
            if (mult % 2 == 0) continue;
            for (const auto& [root, count] : find_roots(factor.complex_coefficients())) {
                // the factor is square-free, so every root is simple; a
                // fatter cluster means two distinct roots collided inside
                // the clustering tolerance
                if (count != 1)
                    throw ValidationError(
                        "numerically ambiguous: distinct roots closer than "
                        "the clustering tolerance");
                BranchPoint bp;
                bp.location = root;
                bp.multiplicity = mult;
                bp.is_pole = pole;
                bp.monodromy_confirmed = monodromy_check(report.e_squared, root);
                report.finite.push_back(bp);
            }
        }
    }
    std::sort(report.finite.begin(), report.finite.end(),
              [](const BranchPoint& a, const BranchPoint& b) {
                  if (a.location.real() != b.location.real())
                      return a.location.real() < b.location.real();
                  return a.location.imag() < b.location.imag();
              });
    return report;
}

// ---------------------------------------------------------------------------
// The corollary chain: branch points somewhere => M- nonzero => unique
// Lambda => statistics fixed by the spin parity.
// ---------------------------------------------------------------------------
struct CorollaryReport {
    bool branch_points_exist = false;
    bool m_minus_nonzero = false;
    int lambda_dimension = 0;
    Statistics verdict = Statistics::Arbitrary;
    bool link_branch_implies_minus = false;
    bool link_minus_implies_unique = false;
    bool link_unique_implies_parity = false;
    std::vector<BranchPointReport> per_sigma;

    bool pass() const {
        return link_branch_implies_minus && link_minus_implies_unique &&
               link_unique_implies_parity;
    }
};

inline CorollaryReport verify_corollary(const FieldSpec& spec,
                                        std::uint64_t seed = 0) {
    CorollaryReport out;
    for (int i = 0; i <= spec.two_j; ++i) {
        int sigma_two = spec.two_j - 2 * i;
        try {
            auto rep = branch_points(spec, sigma_two);
            if (rep.any()) out.branch_points_exist = true;
            out.per_sigma.push_back(std::move(rep));
        } catch (const ValidationError&) {
            // a ray with E^2 identically zero carries no branch points
        }
    }
    out.m_minus_nonzero = !is_zero_on_rep(spec.m_minus, spec.two_j);
    auto verdict = decide_statistics(spec, seed);
    out.lambda_dimension = verdict.lambda_dimension;
    out.verdict = verdict.kind;

    out.link_branch_implies_minus =
        !out.branch_points_exist || out.m_minus_nonzero;
    out.link_minus_implies_unique =
        !out.m_minus_nonzero || out.lambda_dimension == 1;
    bool parity_matches =
        (out.verdict == Statistics::Bose) == (spec.two_j % 2 == 0) &&
        out.verdict != Statistics::Arbitrary;
    out.link_unique_implies_parity =
        out.lambda_dimension != 1 || parity_matches;
    return out;
}

}  // namespace spinstat
