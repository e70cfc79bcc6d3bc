#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "spinstat/expr.hpp"
#include "spinstat/field.hpp"

namespace spinstat {

struct SpecFileOptions {
    double tol = 1e-10;
    int samples = 8;
    std::uint64_t seed = 0;
};

// The on-disk description: TOML-compatible key = value lines with the
// expression strings still unparsed.
//
//   two_j = 1
//   m_plus = "m0"
//   m_minus = "2*y"
//   neutral = false
//   [params]
//   m0 = 4
//   mu = "1/2"
//   [options]
//   tol = 1e-10
//   samples = 8
//   seed = 0
struct SpecFile {
    int two_j = -1;
    std::string m_plus_text;
    std::string m_minus_text;
    int m_plus_line = 1;
    int m_minus_line = 1;
    ParamMap params;
    bool neutral = false;
    SpecFileOptions options;
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError("expected true or false, got '" + v + "'", line, 1);
}

inline std::string unquote(const std::string& v, int line) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
        throw ParseError("expected a quoted string", line, 1);
    return v.substr(1, v.size() - 2);
}

inline long parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        long out = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + v + "'", line, 1);
    }
}

inline double parse_float(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + v + "'", line, 1);
    }
}

// Parameter values are exact: integers, decimal literals, or quoted
// fractions like "3/4".
inline Rational parse_param_value(const std::string& v, int line) {
    if (!v.empty() && v.front() == '"')
        return rational_from_string(unquote(v, line), line, 1);
    return rational_from_string(v, line, 1);
}

}  // namespace detail

inline SpecFile parse_spec_file_text(const std::string& text) {
    SpecFile out;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    bool saw_m_plus = false, saw_m_minus = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        // a '#' inside a quoted expression is not a comment
        std::size_t quote_open = line.find('"');
        std::size_t quote_close =
            quote_open == std::string::npos ? std::string::npos
                                            : line.find('"', quote_open + 1);
        if (hash != std::string::npos &&
            !(quote_open != std::string::npos && hash > quote_open &&
              quote_close != std::string::npos && hash < quote_close))
            line = line.substr(0, hash);
        line = detail::strip(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("unterminated section header", line_no, 1);
            section = detail::strip(line.substr(1, line.size() - 2));
            if (section != "params" && section != "options")
                throw ParseError("unknown section [" + section + "]", line_no, 1);
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value", line_no, 1);
        std::string key = detail::strip(line.substr(0, eq));
        std::string value = detail::strip(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("expected key = value", line_no, 1);

        if (section.empty()) {
            if (key == "two_j") {
                long v = detail::parse_int(value, line_no);
                if (v < 0)
                    throw ParseError("two_j must be nonnegative", line_no, 1);
                out.two_j = static_cast<int>(v);
            } else if (key == "m_plus") {
                out.m_plus_text = detail::unquote(value, line_no);
                out.m_plus_line = line_no;
                saw_m_plus = true;
            } else if (key == "m_minus") {
                out.m_minus_text = detail::unquote(value, line_no);
                out.m_minus_line = line_no;
                saw_m_minus = true;
            } else if (key == "neutral") {
                out.neutral = detail::parse_bool(value, line_no);
            } else {
                throw ParseError("unknown key '" + key + "'", line_no, 1);
            }
        } else if (section == "params") {
            out.params[key] = detail::parse_param_value(value, line_no);
        } else {  // options
            if (key == "tol")
                out.options.tol = detail::parse_float(value, line_no);
            else if (key == "samples")
                out.options.samples =
                    static_cast<int>(detail::parse_int(value, line_no));
            else if (key == "seed")
                out.options.seed = static_cast<std::uint64_t>(
                    detail::parse_int(value, line_no));
            else
                throw ParseError("unknown option '" + key + "'", line_no, 1);
        }
    }
    if (out.two_j < 0) throw ParseError("missing two_j", line_no, 1);
    if (!saw_m_plus) throw ParseError("missing m_plus", line_no, 1);
    if (!saw_m_minus) throw ParseError("missing m_minus", line_no, 1);
    return out;
}

inline SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_file_text(buf.str());
}

inline FieldSpec to_field_spec(const SpecFile& file) {
    FieldSpec spec;
    spec.two_j = file.two_j;
    spec.m_plus = parse_expr(file.m_plus_text, file.params, file.m_plus_line);
    spec.m_minus = parse_expr(file.m_minus_text, file.params, file.m_minus_line);
    spec.params = file.params;
    spec.neutral = file.neutral;
    return spec;
}

}  // namespace spinstat
