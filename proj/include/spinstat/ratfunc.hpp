#pragma once

#include <sstream>
#include <string>

#include "spinstat/errors.hpp"
#include "spinstat/polynomial.hpp"

namespace spinstat {

inline constexpr double kDefaultPoleTol = 1e-12;

enum class BinaryOp { Add, Sub, Mul, Div };

namespace detail {

// Print a bivariate polynomial in the expression grammar (round-trippable).
inline void print_poly2(std::ostream& os, const Poly2& p) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    // grlex descending
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_var = m.xe > 0 || m.ye > 0;
        if (!has_var || a != 1) {
            os << to_string(a);
            if (has_var) os << "*";
        }
        if (m.xe > 0) {
            os << "x";
            if (m.xe > 1) os << "^" << m.xe;
            if (m.ye > 0) os << "*";
        }
        if (m.ye > 0) {
            os << "y";
            if (m.ye > 1) os << "^" << m.ye;
        }
    }
}

inline void print_poly1(std::ostream& os, const Poly1& p) {
    if (p.is_zero()) {
        os << "0";
        return;
    }
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        Rational a = p.coefficients()[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (k == 0 || a != 1) {
            os << to_string(a);
            if (k > 0) os << "*";
        }
        if (k > 0) {
            os << "p";
            if (k > 1) os << "^" << k;
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// RationalFunc2: exact bivariate rational function of x = p^2, y = p.S.
// Stored reduced: common numeric content stripped and the grlex leading
// coefficient of the denominator made +1. Common polynomial factors may
// remain (only evaluation and zero testing are contractual); the numerator
// alone decides is_zero.
// ---------------------------------------------------------------------------
class RationalFunc2 {
  public:
    RationalFunc2() : num_(), den_(Rational(1)) {}
    RationalFunc2(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw ZeroDivideError("denominator is the zero polynomial");
        normalize();
    }
    static RationalFunc2 constant(const Rational& c) {
        return RationalFunc2(Poly2(c), Poly2(Rational(1)));
    }
    static RationalFunc2 var_x() {
        return RationalFunc2(Poly2::var_x(), Poly2(Rational(1)));
    }
    static RationalFunc2 var_y() {
        return RationalFunc2(Poly2::var_y(), Poly2(Rational(1)));
    }

    const Poly2& numerator() const { return num_; }
    const Poly2& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == Poly2(Rational(1)); }

    Complex evaluate(Complex x, Complex y, double pole_tol = kDefaultPoleTol) const {
        Complex d = den_.evaluate(x, y);
        double scale = den_.magnitude_bound(x, y);
        if (std::abs(d) <= pole_tol * (scale + 1.0))
            throw PoleError("evaluation at a pole of the denominator");
        return num_.evaluate(x, y) / d;
    }

    friend RationalFunc2 combine(const RationalFunc2& a, const RationalFunc2& b,
                                 BinaryOp op) {
        switch (op) {
            case BinaryOp::Add:
                return RationalFunc2(a.num_ * b.den_ + b.num_ * a.den_,
                                     a.den_ * b.den_);
            case BinaryOp::Sub:
                return RationalFunc2(a.num_ * b.den_ - b.num_ * a.den_,
                                     a.den_ * b.den_);
            case BinaryOp::Mul:
                return RationalFunc2(a.num_ * b.num_, a.den_ * b.den_);
            case BinaryOp::Div:
                if (b.is_zero())
                    throw ZeroDivideError("division by the zero function");
                return RationalFunc2(a.num_ * b.den_, a.den_ * b.num_);
        }
        throw InternalError("unreachable");
    }
    friend RationalFunc2 operator+(const RationalFunc2& a, const RationalFunc2& b) {
        return combine(a, b, BinaryOp::Add);
    }
    friend RationalFunc2 operator-(const RationalFunc2& a, const RationalFunc2& b) {
        return combine(a, b, BinaryOp::Sub);
    }
    friend RationalFunc2 operator*(const RationalFunc2& a, const RationalFunc2& b) {
        return combine(a, b, BinaryOp::Mul);
    }
    friend RationalFunc2 operator/(const RationalFunc2& a, const RationalFunc2& b) {
        return combine(a, b, BinaryOp::Div);
    }
    RationalFunc2 operator-() const { return RationalFunc2(-num_, den_); }

    RationalFunc2 pow(int n) const {
        RationalFunc2 r = constant(1);
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const RationalFunc2& a, const RationalFunc2& b) {
        // equality of values, not of representations: reduction may leave
        // common polynomial factors, so compare through the difference
        return (a - b).is_zero();
    }

    std::string to_expression() const {
        std::ostringstream os;
        if (is_polynomial()) {
            detail::print_poly2(os, num_);
        } else {
            os << "(";
            detail::print_poly2(os, num_);
            os << ")/(";
            detail::print_poly2(os, den_);
            os << ")";
        }
        return os.str();
    }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly2(Rational(1));
            return;
        }
        Rational scale = den_.content();
        if (den_.leading_coefficient() < 0) scale = -scale;
        num_ = num_ * (Rational(1) / scale);
        den_ = den_ * (Rational(1) / scale);
    }

    Poly2 num_;
    Poly2 den_;
};

// ---------------------------------------------------------------------------
// RationalFunc1: univariate rational function of p along a momentum ray.
// Fully reduced: numerator and denominator made coprime by exact gcd.
// ---------------------------------------------------------------------------
class RationalFunc1 {
  public:
    RationalFunc1() : num_(), den_(Rational(1)) {}
    RationalFunc1(Poly1 num, Poly1 den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw ZeroDivideError("denominator is the zero polynomial");
        reduce();
    }

    const Poly1& numerator() const { return num_; }
    const Poly1& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    Complex evaluate(Complex p, double pole_tol = kDefaultPoleTol) const {
        Complex d = den_.evaluate(p);
        double scale = den_.magnitude_bound(p);
        if (std::abs(d) <= pole_tol * (scale + 1.0))
            throw PoleError("evaluation at a pole of the denominator");
        return num_.evaluate(p) / d;
    }

    friend RationalFunc1 combine(const RationalFunc1& a, const RationalFunc1& b,
                                 BinaryOp op) {
        switch (op) {
            case BinaryOp::Add:
                return RationalFunc1(a.num_ * b.den_ + b.num_ * a.den_,
                                     a.den_ * b.den_);
            case BinaryOp::Sub:
                return RationalFunc1(a.num_ * b.den_ - b.num_ * a.den_,
                                     a.den_ * b.den_);
            case BinaryOp::Mul:
                return RationalFunc1(a.num_ * b.num_, a.den_ * b.den_);
            case BinaryOp::Div:
                if (b.is_zero())
                    throw ZeroDivideError("division by the zero function");
                return RationalFunc1(a.num_ * b.den_, a.den_ * b.num_);
        }
        throw InternalError("unreachable");
    }
    friend RationalFunc1 operator+(const RationalFunc1& a, const RationalFunc1& b) {
        return combine(a, b, BinaryOp::Add);
    }
    friend RationalFunc1 operator-(const RationalFunc1& a, const RationalFunc1& b) {
        return combine(a, b, BinaryOp::Sub);
    }
    friend RationalFunc1 operator*(const RationalFunc1& a, const RationalFunc1& b) {
        return combine(a, b, BinaryOp::Mul);
    }
    friend bool operator==(const RationalFunc1& a, const RationalFunc1& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string to_expression() const {
        std::ostringstream os;
        if (den_ == Poly1(Rational(1))) {
            detail::print_poly1(os, num_);
        } else {
            os << "(";
            detail::print_poly1(os, num_);
            os << ")/(";
            detail::print_poly1(os, den_);
            os << ")";
        }
        return os.str();
    }

  private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = Poly1(Rational(1));
            return;
        }
        Poly1 g = Poly1::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly1::divmod(num_, g).first;
            den_ = Poly1::divmod(den_, g).first;
        }
        Rational scale = den_.content();
        if (den_.leading_coefficient() < 0) scale = -scale;
        num_ = num_ * (Rational(1) / scale);
        den_ = den_ * (Rational(1) / scale);
    }

    Poly1 num_;
    Poly1 den_;
};

// Substitute x -> p^2, y -> sigma*p.
inline Poly1 restrict_poly_to_ray(const Poly2& f, const Rational& sigma) {
    Poly1 out;
    std::vector<Rational> coeffs;
    for (const auto& [m, c] : f.terms()) {
        int k = 2 * m.xe + m.ye;
        if (k >= static_cast<int>(coeffs.size())) coeffs.resize(k + 1, Rational(0));
        Rational s = c;
        for (int i = 0; i < m.ye; ++i) s *= sigma;
        coeffs[static_cast<std::size_t>(k)] += s;
    }
    return Poly1(std::move(coeffs));
}

inline RationalFunc1 restrict_to_ray(const RationalFunc2& f, const Rational& sigma) {
    return RationalFunc1(restrict_poly_to_ray(f.numerator(), sigma),
                         restrict_poly_to_ray(f.denominator(), sigma));
}

}  // namespace spinstat
