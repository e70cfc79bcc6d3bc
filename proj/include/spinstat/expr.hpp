#pragma once

#include <cctype>
#include <map>
#include <string>

#include "spinstat/ratfunc.hpp"

namespace spinstat {

using ParamMap = std::map<std::string, Rational>;

// Recursive-descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' uint)*
//   atom   := number | 'x' | 'y' | parameter | '(' expr ')'
// Numbers are decimal literals, converted exactly. Parameters substitute
// as exact rationals. Errors carry the 1-based column of the offence.
class ExprParser {
  public:
    ExprParser(std::string text, const ParamMap& params, int line = 1)
        : text_(std::move(text)), params_(params), line_(line) {}

    RationalFunc2 parse() {
        RationalFunc2 value = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input '" + std::string(1, text_[pos_]) + "'");
        return value;
    }

  private:
    RationalFunc2 parse_expr() {
        RationalFunc2 value = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                value = value + parse_term();
            else if (accept('-'))
                value = value - parse_term();
            else
                return value;
        }
    }

    RationalFunc2 parse_term() {
        RationalFunc2 value = parse_unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                value = value * parse_unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RationalFunc2 rhs = parse_unary();
                if (rhs.is_zero()) fail_at(at, "division by zero");
                value = value / rhs;
            } else {
                return value;
            }
        }
    }

    RationalFunc2 parse_unary() {
        skip_ws();
        if (accept('-')) return RationalFunc2::constant(0) - parse_unary();
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    RationalFunc2 parse_power() {
        RationalFunc2 base = parse_atom();
        for (;;) {
            skip_ws();
            if (!accept('^')) return base;
            skip_ws();
            std::size_t at = pos_;
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            if (digits.empty()) fail_at(at, "expected a nonnegative integer exponent");
            long e = std::stol(digits);
            if (e > 64) fail_at(at, "exponent too large");
            base = base.pow(static_cast<int>(e));
        }
    }

    RationalFunc2 parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (accept('(')) {
            RationalFunc2 inner = parse_expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t at = pos_;
            std::string lit;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
                lit += text_[pos_++];
            return RationalFunc2::constant(
                rational_from_decimal(lit, line_, static_cast<int>(at) + 1));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += text_[pos_++];
            if (name == "x") return RationalFunc2::var_x();
            if (name == "y") return RationalFunc2::var_y();
            auto it = params_.find(name);
            if (it == params_.end()) fail_at(at, "unknown parameter '" + name + "'");
            return RationalFunc2::constant(it->second);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
        throw ParseError(msg, line_, static_cast<int>(at) + 1);
    }

    std::string text_;
    const ParamMap& params_;
    int line_;
    std::size_t pos_ = 0;
};

inline RationalFunc2 parse_expr(const std::string& text, const ParamMap& params = {},
                                int line = 1) {
    return ExprParser(text, params, line).parse();
}

}  // namespace spinstat
