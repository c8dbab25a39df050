#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace lieform {

/// Exact rational scalar. All arithmetic in the engine is over these;
/// no floating point appears anywhere on a decision path.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p" or "p/q" with optional leading minus. Returns nullopt on
/// malformed input or a zero denominator.
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (digits == 0) return std::nullopt;
    if (i < s.size()) {
        if (s[i] != '/') return std::nullopt;
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        if (digits == 0 || i != s.size()) return std::nullopt;
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    if (sgn(q.get_den()) == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

/// Canonical form: "p" for integers, "p/q" otherwise, q > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace lieform
