#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sympcert/monomial.hpp"
#include "sympcert/rational.hpp"
#include "sympcert/vartable.hpp"

namespace sympcert {

struct Term {
    Rational c;
    Monomial m;
};

// Sparse multivariate polynomial over Q in canonical form: terms strictly
// descending under the default lex order, no zero coefficients, no duplicate
// monomials. Two polynomials are equal iff their term lists are identical.
class Poly {
  public:
    Poly() = default;

    explicit Poly(Rational constant) {
        if (constant != 0) terms_.push_back({std::move(constant), Monomial::one()});
    }

    explicit Poly(long constant) : Poly(Rational(constant)) {}

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational(1)); }

    static Poly variable(std::size_t id, int exp = 1) {
        Poly p;
        if (exp < 0) throw std::invalid_argument("negative exponent");
        if (exp == 0) return one();
        p.terms_.push_back({Rational(1), Monomial::var(id, exp)});
        return p;
    }

    static Poly variable(std::string_view name, int exp = 1) {
        return variable(var_id(name), exp);
    }

    static Poly term(Rational c, Monomial m) {
        Poly p;
        if (c != 0) p.terms_.push_back({std::move(c), std::move(m)});
        return p;
    }

    // Takes an arbitrary term soup and canonicalizes it.
    static Poly from_terms(std::vector<Term> terms) {
        Poly p;
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    // Trusted constructor: terms must already be strictly descending with no
    // zeros. Used on paths where the order is preserved by construction.
    static Poly from_canonical(std::vector<Term> terms) {
        Poly p;
        p.terms_ = std::move(terms);
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return terms_[0].c;
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return terms_[0];
    }

    int total_degree() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.degree());
        return d;
    }

    int degree_main() const {
        int d = 0;
        for (const auto& t : terms_) d = std::max(d, t.m.degree_main());
        return d;
    }

    bool is_homogeneous_main(int deg) const {
        for (const auto& t : terms_)
            if (t.m.degree_main() != deg) return false;
        return true;
    }

    bool has_main_var() const {
        for (const auto& t : terms_)
            if (t.m.has_main_var()) return true;
        return false;
    }

    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) { return merged(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return merged(a, b, true); }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        const Poly& small = a.term_count() <= b.term_count() ? a : b;
        const Poly& big = a.term_count() <= b.term_count() ? b : a;
        Poly acc;
        for (const auto& t : small.terms_) {
            Poly part = big;
            for (auto& u : part.terms_) {
                u.c *= t.c;
                u.m = u.m * t.m;
            }
            acc = acc + part;
        }
        return acc;
    }

    friend Poly operator*(const Poly& a, const Rational& c) {
        if (c == 0) return Poly();
        Poly r = a;
        for (auto& t : r.terms_) t.c *= c;
        return r;
    }
    friend Poly operator*(const Rational& c, const Poly& a) { return a * c; }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(int exp) const {
        if (exp < 0) throw std::invalid_argument("negative exponent");
        Poly result = one(), base = *this;
        while (exp) {
            if (exp & 1) result *= base;
            base = (exp >>= 1) ? base * base : Poly();
        }
        return result;
    }

    bool operator==(const Poly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].c != o.terms_[i].c || terms_[i].m != o.terms_[i].m) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Simultaneous substitution of polynomials for symbols.
    Poly substitute(const std::map<std::size_t, Poly>& assignment) const {
        Poly acc;
        std::map<std::size_t, std::vector<Poly>> powers;  // id -> [p^1, p^2, ...]
        for (const auto& t : terms_) {
            Poly part(t.c);
            for (std::size_t i = 0; i < kTableSize; ++i) {
                int e = t.m.e[i];
                if (!e) continue;
                auto it = assignment.find(i);
                if (it == assignment.end()) {
                    part *= variable(i, e);
                } else {
                    auto& pw = powers[i];
                    while (static_cast<int>(pw.size()) < e)
                        pw.push_back(pw.empty() ? it->second : pw.back() * it->second);
                    part *= pw[e - 1];
                }
            }
            acc += part;
        }
        return acc;
    }

    // Full evaluation: every symbol that occurs must be assigned. Powers of
    // each assigned value are cached, which matters when the same large
    // polynomial is evaluated at many witness points.
    Rational evaluate(const std::map<std::size_t, Rational>& point) const {
        std::array<std::vector<Rational>, kTableSize> powers;  // powers[i][k] = v_i^(k+1)
        Rational acc(0);
        for (const auto& t : terms_) {
            Rational part = t.c;
            for (std::size_t i = 0; i < kTableSize; ++i) {
                int e = t.m.e[i];
                if (!e) continue;
                auto& pw = powers[i];
                if (pw.empty()) {
                    auto it = point.find(i);
                    if (it == point.end())
                        throw std::invalid_argument("unassigned symbol in evaluation: " +
                                                    var_name(i));
                    pw.push_back(it->second);
                }
                while (static_cast<int>(pw.size()) < e) pw.push_back(pw.back() * pw.front());
                part *= pw[std::size_t(e - 1)];
            }
            acc += part;
        }
        return acc;
    }

    std::string str() const;

    void canonicalize() {
        static const MonomialOrder order{};
        std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
            return order.compare(a.m, b.m) > 0;
        });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (t.c == 0) continue;
            if (!out.empty() && out.back().m == t.m) {
                out.back().c += t.c;
                if (out.back().c == 0) out.pop_back();
            } else {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

  private:
    // Merge two canonical term lists (subtracting if sub). Both inputs are
    // descending under default lex, so this is a linear merge.
    static Poly merged(const Poly& a, const Poly& b, bool sub) {
        static const MonomialOrder order{};
        Poly r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int cmp = order.compare(a.terms_[i].m, b.terms_[j].m);
            if (cmp > 0) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (cmp < 0) {
                Term t = b.terms_[j++];
                if (sub) t.c = -t.c;
                r.terms_.push_back(std::move(t));
            } else {
                Rational c = sub ? Rational(a.terms_[i].c - b.terms_[j].c)
                                 : Rational(a.terms_[i].c + b.terms_[j].c);
                if (c != 0) r.terms_.push_back({std::move(c), a.terms_[i].m});
                ++i, ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) {
            Term t = b.terms_[j];
            if (sub) t.c = -t.c;
            r.terms_.push_back(std::move(t));
        }
        return r;
    }

    std::vector<Term> terms_;
};

// (c * m) * src without re-sorting: multiplying every monomial by a fixed m
// preserves descending order.
inline Poly scaled_shift(const Rational& c, const Monomial& m, const Poly& src) {
    std::vector<Term> scaled;
    scaled.reserve(src.terms().size());
    for (const auto& t : src.terms()) scaled.push_back({t.c * c, t.m * m});
    return Poly::from_canonical(std::move(scaled));
}

// dst -= (c * m) * src, all canonical. The workhorse of division.
inline Poly axpy_sub(const Poly& dst, const Rational& c, const Monomial& m, const Poly& src) {
    return dst - scaled_shift(c, m, src);
}

namespace detail {

class PolyParser {
  public:
    explicit PolyParser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw std::invalid_argument("trailing input in polynomial at position " +
                                        std::to_string(pos_));
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Poly parse_expr() {
        Poly acc;
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        acc = parse_product();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) acc += parse_product();
            else if (eat('-')) acc -= parse_product();
            else break;
        }
        return acc;
    }

    Poly parse_product() {
        Poly acc = parse_power();
        while (eat('*')) acc *= parse_power();
        return acc;
    }

    Poly parse_power() {
        Poly base = parse_atom();
        if (eat('^')) {
            int e = parse_uint();
            return base.pow(e);
        }
        return base;
    }

    Poly parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw std::invalid_argument("unexpected end of polynomial");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = parse_expr();
            if (!eat(')')) throw std::invalid_argument("missing ')' in polynomial");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Poly(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string sym;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                sym += text_[pos_++];
            return Poly::variable(var_id(sym));
        }
        throw std::invalid_argument(std::string("unexpected character '") + c + "' in polynomial");
    }

    Rational parse_number() {
        std::string num;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            num += text_[pos_++];
        std::size_t save = pos_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            skip_ws();
            std::string den;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                den += text_[pos_++];
            if (den.empty()) throw std::invalid_argument("malformed rational in polynomial");
            return parse_rational(num + "/" + den);
        }
        pos_ = save;
        return parse_rational(num);
    }

    int parse_uint() {
        skip_ws();
        std::string num;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            num += text_[pos_++];
        if (num.empty()) throw std::invalid_argument("expected exponent");
        return std::stoi(num);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly poly_parse(std::string_view text) { return detail::PolyParser(text).parse(); }

inline std::string monomial_str(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < kTableSize; ++i) {
        if (!m.e[i]) continue;
        if (!out.empty()) out += "*";
        out += var_name(i);
        if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
    }
    return out.empty() ? "1" : out;
}

inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const Term& t = terms_[i];
        Rational c = t.c;
        if (i == 0) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string mono = monomial_str(t.m);
        if (mono == "1") out += to_string(c);
        else if (c == 1) out += mono;
        else out += to_string(c) + "*" + mono;
    }
    return out;
}

}  // namespace sympcert
