#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sympcert/vartable.hpp"

namespace sympcert {

// Dense exponent vector over the fixed table. Exponents fit comfortably in a
// byte for everything this pipeline produces.
struct Monomial {
    std::array<std::uint8_t, kTableSize> e{};

    static Monomial one() { return Monomial{}; }

    static Monomial var(std::size_t id, int exp = 1) {
        Monomial m;
        m.e[id] = static_cast<std::uint8_t>(exp);
        return m;
    }

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }

    int degree_main() const {
        int d = 0;
        for (std::size_t i = 0; i < kNumMainVars; ++i) d += e[i];
        return d;
    }

    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }

    bool has_main_var() const {
        for (std::size_t i = 0; i < kNumMainVars; ++i)
            if (e[i]) return true;
        return false;
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < kTableSize; ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kTableSize; ++i) {
            unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
            if (s > 255) throw std::overflow_error("monomial exponent overflow");
            r.e[i] = static_cast<std::uint8_t>(s);
        }
        return r;
    }

    // Exact quotient; caller must ensure divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kTableSize; ++i)
            r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kTableSize; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < kTableSize; ++i)
            if (a.e[i] && b.e[i]) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

enum class OrderKind { Lex, DegRevLex };

// Monomial order over the table. The ranking permutes the main variables
// only; parameters and auxiliary symbols always rank below every main
// variable, in table order, so they act as coefficients during division.
struct MonomialOrder {
    OrderKind kind = OrderKind::Lex;
    // ranking[i] = table id of the i-th most significant main variable.
    std::array<std::uint8_t, kNumMainVars> ranking = default_ranking();

    static std::array<std::uint8_t, kNumMainVars> default_ranking() {
        std::array<std::uint8_t, kNumMainVars> r{};
        for (std::size_t i = 0; i < kNumMainVars; ++i) r[i] = static_cast<std::uint8_t>(i);
        return r;
    }

    bool is_default_lex() const {
        return kind == OrderKind::Lex && ranking == default_ranking();
    }

    // Returns <0, 0, >0 as a is smaller, equal, greater than b.
    int compare(const Monomial& a, const Monomial& b) const {
        if (is_default_lex()) return std::memcmp(a.e.data(), b.e.data(), kTableSize);
        if (kind == OrderKind::Lex) {
            for (std::size_t i = 0; i < kNumMainVars; ++i) {
                int d = int(a.e[ranking[i]]) - int(b.e[ranking[i]]);
                if (d) return d;
            }
            for (std::size_t i = kNumMainVars; i < kTableSize; ++i) {
                int d = int(a.e[i]) - int(b.e[i]);
                if (d) return d;
            }
            return 0;
        }
        // DegRevLex on the main block, then lex on the remaining symbols.
        int da = 0, db = 0;
        for (std::size_t i = 0; i < kNumMainVars; ++i) {
            da += a.e[ranking[i]];
            db += b.e[ranking[i]];
        }
        if (da != db) return da - db;
        for (std::size_t i = kNumMainVars; i-- > 0;) {
            int d = int(a.e[ranking[i]]) - int(b.e[ranking[i]]);
            if (d) return -d;
        }
        for (std::size_t i = kNumMainVars; i < kTableSize; ++i) {
            int d = int(a.e[i]) - int(b.e[i]);
            if (d) return d;
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    bool operator==(const MonomialOrder& o) const {
        return kind == o.kind && ranking == o.ranking;
    }
};

}  // namespace sympcert
