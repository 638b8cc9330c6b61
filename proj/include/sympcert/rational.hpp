#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sympcert {

// Exact rational coefficient type. Everything in the symbolic kernel is a
// Rational; no floating point crosses this boundary.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", "p/q". Throws on malformed input or zero denominator.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace sympcert
