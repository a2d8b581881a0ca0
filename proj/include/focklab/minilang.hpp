#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace focklab::minilang {

inline std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// Split at top level by `sep`, ignoring separators inside parentheses.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string strip_parens(const std::string& in) {
    std::string s = trim(in);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && i + 1 < s.size()) return s;  // outer parens do not match
        }
        return trim(s.substr(1, s.size() - 2));
    }
    return s;
}

/// Parse "X+Yi" style complex literals: "3", "-2.5", "i", "2i", "1+2i", "1-0.5i".
inline cplx parse_complex(const std::string& in) {
    const std::string s = trim(in);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad complex literal: " + in);
        return {re, 0.0};
    }
    const std::string body = s.substr(0, s.size() - 1);
    // find split between real and imaginary parts: last top-level +/- not an
    // exponent sign and not the leading sign
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto parse_im = [&](const std::string& t) -> double {
        const std::string u = trim(t);
        if (u.empty() || u == "+") return 1.0;
        if (u == "-") return -1.0;
        size_t pos = 0;
        const double v = std::stod(u, &pos);
        if (pos != u.size()) throw std::invalid_argument("bad complex literal: " + in);
        return v;
    };
    if (split == std::string::npos) return {0.0, parse_im(body)};
    size_t pos = 0;
    const double re = std::stod(body.substr(0, split), &pos);
    if (pos != split) throw std::invalid_argument("bad complex literal: " + in);
    return {re, parse_im(body.substr(split))};
}

inline double parse_real(const std::string& in) {
    const cplx z = parse_complex(in);
    if (z.imag() != 0.0) throw std::invalid_argument("expected a real number: " + in);
    return z.real();
}

/// Parse "key=value,key=value" with paren-aware splitting; values may be
/// nested parenthesised specs.
inline std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> kv;
    if (trim(s).empty()) return kv;
    for (const std::string& part : split_top(s, ',')) {
        const std::string p = trim(part);
        if (p.empty()) continue;
        const size_t eq = p.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value, got: " + p);
        kv.emplace_back(trim(p.substr(0, eq)), trim(p.substr(eq + 1)));
    }
    return kv;
}

}  // namespace focklab::minilang
