#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "spinstat/rational.hpp"

namespace spinstat {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Bivariate polynomials in x = p^2 and y = p.S eigenvalue.
// ---------------------------------------------------------------------------

struct Mono2 {
    int xe = 0;
    int ye = 0;
    friend bool operator==(const Mono2&, const Mono2&) = default;
};

// Graded lexicographic order: total degree first, then x-degree.
struct GrlexLess {
    bool operator()(const Mono2& a, const Mono2& b) const {
        int da = a.xe + a.ye, db = b.xe + b.ye;
        if (da != db) return da < db;
        if (a.xe != b.xe) return a.xe < b.xe;
        return a.ye < b.ye;
    }
};

class Poly2 {
  public:
    using TermMap = std::map<Mono2, Rational, GrlexLess>;

    Poly2() = default;
    explicit Poly2(const Rational& c) {
        if (c != 0) terms_[{0, 0}] = c;
    }
    static Poly2 var_x() { return monomial({1, 0}, 1); }
    static Poly2 var_y() { return monomial({0, 1}, 1); }
    static Poly2 monomial(Mono2 m, const Rational& c) {
        Poly2 p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Mono2{0, 0});
    }
    int total_degree() const {
        if (terms_.empty()) return -1;
        const Mono2& m = terms_.rbegin()->first;
        return m.xe + m.ye;
    }

    // Leading coefficient under grlex.
    Rational leading_coefficient() const {
        return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
    }

    // gcd of |coefficients|; 0 for the zero polynomial.
    Rational content() const {
        Rational g = 0;
        for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
        return g;
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    Poly2 operator-() const {
        Poly2 r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term({ma.xe + mb.xe, ma.ye + mb.ye}, ca * cb);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Rational& s) {
        Poly2 r;
        if (s == 0) return r;
        r = a;
        for (auto& [m, c] : r.terms_) c *= s;
        return r;
    }

    Poly2 pow(int n) const {
        Poly2 r(Rational(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    Complex evaluate(Complex x, Complex y) const {
        Complex acc = 0;
        for (const auto& [m, c] : terms_)
            acc += to_complex(c) * ipow(x, m.xe) * ipow(y, m.ye);
        return acc;
    }

    // Sum of |c| * |x|^a * |y|^b: magnitude scale for pole detection.
    double magnitude_bound(Complex x, Complex y) const {
        double acc = 0;
        double ax = std::abs(x), ay = std::abs(y);
        for (const auto& [m, c] : terms_)
            acc += std::abs(to_double(c)) * std::pow(ax, m.xe) * std::pow(ay, m.ye);
        return acc;
    }

    friend bool operator==(const Poly2& a, const Poly2& b) {
        return a.terms_ == b.terms_;
    }

  private:
    static Complex ipow(Complex z, int n) {
        Complex r = 1;
        for (int i = 0; i < n; ++i) r *= z;
        return r;
    }
    void add_term(Mono2 m, const Rational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Univariate polynomials in p, dense, exact rational coefficients.
// ---------------------------------------------------------------------------

class Poly1 {
  public:
    Poly1() = default;
    explicit Poly1(const Rational& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit Poly1(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        trim();
    }

    // coefficient of p^k; c_[degree] != 0 when nonzero.
    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational leading_coefficient() const {
        return c_.empty() ? Rational(0) : c_.back();
    }
    Rational content() const {
        Rational g = 0;
        for (const auto& c : c_) g = rational_gcd(g, c);
        return g;
    }

    void set_coefficient(int k, const Rational& c) {
        if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, Rational(0));
        c_[static_cast<std::size_t>(k)] = c;
        trim();
    }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        Poly1 r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
        r.trim();
        return r;
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        Poly1 r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
        r.trim();
        return r;
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        Poly1 r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend Poly1 operator*(const Poly1& a, const Rational& s) {
        Poly1 r;
        if (s == 0) return r;
        r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    // Exact Euclidean division; denominator must be nonzero.
    static std::pair<Poly1, Poly1> divmod(const Poly1& num, const Poly1& den) {
        Poly1 q, r = num;
        q.c_.assign(std::max<std::size_t>(num.c_.size(), 1), Rational(0));
        while (!r.is_zero() && r.degree() >= den.degree()) {
            int k = r.degree() - den.degree();
            Rational f = r.leading_coefficient() / den.leading_coefficient();
            q.c_[static_cast<std::size_t>(k)] += f;
            Poly1 shift;
            shift.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
            shift.c_.back() = f;
            r = r - shift * den;
        }
        q.trim();
        return {q, r};
    }

    // Monic gcd via the Euclidean algorithm (exact over the rationals).
    static Poly1 gcd(Poly1 a, Poly1 b) {
        while (!b.is_zero()) {
            Poly1 r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        Rational lead = a.leading_coefficient();
        for (auto& c : a.c_) c /= lead;
        return a;
    }

    Poly1 derivative() const {
        Poly1 r;
        if (c_.size() <= 1) return r;
        r.c_.resize(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            r.c_[k - 1] = c_[k] * Rational(static_cast<int>(k));
        r.trim();
        return r;
    }

    Complex evaluate(Complex p) const {
        Complex acc = 0;  // Horner
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * p + to_complex(*it);
        return acc;
    }
    double magnitude_bound(Complex p) const {
        double acc = 0, ap = std::abs(p), pw = 1;
        for (const auto& c : c_) {
            acc += std::abs(to_double(c)) * pw;
            pw *= ap;
        }
        return acc;
    }

    std::vector<Complex> complex_coefficients() const {
        std::vector<Complex> out;
        out.reserve(c_.size());
        for (const auto& c : c_) out.push_back(to_complex(c));
        return out;
    }

    friend bool operator==(const Poly1& a, const Poly1& b) {
        return a.c_ == b.c_;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace spinstat
