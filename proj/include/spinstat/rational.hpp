#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "spinstat/errors.hpp"

namespace spinstat {

// Arbitrary-precision rational. All polynomial arithmetic is closed over
// this type; conversion to double happens only at evaluation time.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::complex<double> to_complex(const Rational& r) {
    return {to_double(r), 0.0};
}

// gcd on nonnegative rationals: gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d).
// Used to strip common numeric content from polynomial coefficients.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    BigInt an = numerator(a), ad = denominator(a);
    BigInt bn = numerator(b), bd = denominator(b);
    if (an < 0) an = -an;
    if (bn < 0) bn = -bn;
    if (an == 0) return Rational(bn, bd);
    if (bn == 0) return Rational(an, ad);
    return Rational(gcd(an * bd, bn * ad), ad * bd);
}

// Exact rational from a decimal literal such as "12", "0.5" or "3.".
// Throws ParseError on anything else.
inline Rational rational_from_decimal(const std::string& text, int line = 1,
                                      int column = 1) {
    if (text.empty()) throw ParseError("empty numeric literal", line, column);
    std::size_t dot = text.find('.');
    std::string digits;
    int frac_len = 0;
    if (dot == std::string::npos) {
        digits = text;
    } else {
        digits = text.substr(0, dot) + text.substr(dot + 1);
        frac_len = static_cast<int>(text.size() - dot - 1);
        if (digits.empty())
            throw ParseError("bare '.' is not a number", line, column);
    }
    for (char c : digits)
        if (c < '0' || c > '9')
            throw ParseError("bad digit in numeric literal '" + text + "'",
                             line, column);
    // strip leading zeros: the BigInt constructor would read them as octal
    std::size_t first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    BigInt n(digits);
    BigInt d = 1;
    for (int i = 0; i < frac_len; ++i) d *= 10;
    return Rational(n, d);
}

// Accepts "n", "n/d", or a decimal literal. Used for parameter values.
inline Rational rational_from_string(const std::string& text, int line = 1,
                                     int column = 1) {
    std::string s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    Rational value;
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        value = rational_from_decimal(s, line, column);
    } else {
        Rational num = rational_from_decimal(s.substr(0, slash), line, column);
        Rational den = rational_from_decimal(s.substr(slash + 1), line, column);
        if (den == 0) throw ParseError("zero denominator in '" + text + "'", line, column);
        value = num / den;
    }
    return neg ? -value : value;
}

inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace spinstat
