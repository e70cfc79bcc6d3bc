#pragma once

// Random low-degree field specs for property tests. A draw is accepted
// when M- is not the zero function, M+ stays strictly positive and E^2
// stays safely away from zero for every helicity over a dense momentum
// grid covering the sampling range used by decide_statistics. The
// positivity screen keeps the closed-form eigenvectors (and hence the
// Hamiltonian) inside their domain; a spec with M+ <= 0 somewhere has
// negative-energy particle modes and no positivity question to ask.

#include <random>

#include "spinstat/field.hpp"
#include "spinstat/spectrum.hpp"

namespace spinstat::testing {

inline Poly2 random_poly_deg2(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    Poly2 p;
    const Mono2 monos[] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    for (const Mono2& m : monos)
        if (pick(rng) == 0)
            p = p + Poly2::monomial(m, Rational(num(rng), den(rng)));
    return p;
}

inline bool spec_is_usable(const FieldSpec& spec) {
    auto grid = default_p_grid(48, 0.05, 12.0);
    for (int i = 0; i <= spec.two_j; ++i) {
        int sigma_two = spec.two_j - 2 * i;
        for (double p : grid) {
            Complex x(p * p, 0), y(0.5 * p * sigma_two, 0);
            double mp, e2;
            try {
                mp = spec.m_plus.evaluate(x, y).real();
                e2 = energy_squared(spec, p, sigma_two);
            } catch (const Error&) {
                return false;
            }
            if (mp < 0.05) return false;
            if (e2 < 1e-3) return false;
        }
    }
    return true;
}

// Draws until a usable spec with M- != 0 appears.
inline FieldSpec random_valid_spec(std::mt19937_64& rng, int two_j) {
    for (;;) {
        FieldSpec spec;
        spec.two_j = two_j;
        Poly2 one(Rational(1));
        spec.m_plus = RationalFunc2(random_poly_deg2(rng) + one, one);
        spec.m_minus = RationalFunc2(random_poly_deg2(rng), one);
        if (is_zero_on_rep(spec.m_minus, two_j)) continue;
        if (!spec_is_usable(spec)) continue;
        return spec;
    }
}

// Same but with M- identically zero (the arbitrary-statistics family).
inline FieldSpec random_minus_zero_spec(std::mt19937_64& rng, int two_j) {
    for (;;) {
        FieldSpec spec;
        spec.two_j = two_j;
        Poly2 one(Rational(1));
        spec.m_plus = RationalFunc2(random_poly_deg2(rng) + one, one);
        spec.m_minus = RationalFunc2();
        if (!spec_is_usable(spec)) continue;
        return spec;
    }
}

}  // namespace spinstat::testing
