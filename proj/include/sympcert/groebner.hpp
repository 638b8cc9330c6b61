#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sympcert/poly.hpp"

namespace sympcert {

namespace detail {

// Geobucket accumulator: keeps the live polynomial as a small stack of
// sorted term lists with geometrically growing capacities, so repeated
// "subtract a scaled basis element" steps stay cheap on large reductions.
class Geobucket {
  public:
    explicit Geobucket(const MonomialOrder& order) : order_(order) {}

    void add(std::vector<Term> terms) {
        if (terms.empty()) return;
        std::size_t k = 0;
        while (cap(k) < terms.size()) ++k;
        while (k < buckets_.size() && !buckets_[k].empty()) {
            terms = merge(buckets_[k], terms);
            buckets_[k].clear();
            if (terms.size() <= cap(k)) break;
            ++k;
        }
        if (k >= buckets_.size()) buckets_.resize(k + 1);
        if (buckets_[k].empty()) {
            buckets_[k] = std::move(terms);
        } else {
            auto merged = merge(buckets_[k], terms);
            buckets_[k] = std::move(merged);
        }
    }

    void add_poly(const Poly& p) {
        std::vector<Term> terms(p.terms().begin(), p.terms().end());
        if (!order_.is_default_lex())
            std::sort(terms.begin(), terms.end(), [this](const Term& a, const Term& b) {
                return order_.compare(a.m, b.m) > 0;
            });
        add(std::move(terms));
    }

    // Removes and returns the leading term, resolving cross-bucket
    // cancellation. Empty optional when the accumulator is zero.
    std::optional<Term> extract_leading() {
        while (true) {
            const Monomial* best = nullptr;
            for (const auto& b : buckets_) {
                if (b.empty()) continue;
                if (!best || order_.compare(b.front().m, *best) > 0) best = &b.front().m;
            }
            if (!best) return std::nullopt;
            Monomial m = *best;
            Rational c(0);
            for (auto& b : buckets_) {
                if (!b.empty() && b.front().m == m) {
                    c += b.front().c;
                    b.erase(b.begin());
                }
            }
            if (c != 0) return Term{std::move(c), m};
        }
    }

    std::size_t live_terms() const {
        std::size_t n = 0;
        for (const auto& b : buckets_) n += b.size();
        return n;
    }

  private:
    static std::size_t cap(std::size_t k) { return std::size_t(4) << (2 * k); }

    std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) const {
        std::vector<Term> r;
        r.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int cmp = order_.compare(a[i].m, b[j].m);
            if (cmp > 0) r.push_back(a[i++]);
            else if (cmp < 0) r.push_back(b[j++]);
            else {
                Rational c = a[i].c + b[j].c;
                if (c != 0) r.push_back({std::move(c), a[i].m});
                ++i, ++j;
            }
        }
        for (; i < a.size(); ++i) r.push_back(a[i]);
        for (; j < b.size(); ++j) r.push_back(b[j]);
        return r;
    }

    const MonomialOrder& order_;
    std::vector<std::vector<Term>> buckets_;
};

// A basis element prepared for division: monic, leading monomial split off.
struct Divisor {
    Monomial lead;
    std::vector<Term> tail;  // descending under the division order
    Poly whole;              // monic, canonical storage form
};

inline Divisor make_divisor(const Poly& p, const MonomialOrder& order) {
    std::vector<Term> terms(p.terms().begin(), p.terms().end());
    if (!order.is_default_lex())
        std::sort(terms.begin(), terms.end(),
                  [&order](const Term& a, const Term& b) { return order.compare(a.m, b.m) > 0; });
    if (terms.empty()) throw std::invalid_argument("zero polynomial in basis");
    Rational lc = terms.front().c;
    Divisor d;
    d.lead = terms.front().m;
    for (std::size_t i = 1; i < terms.size(); ++i)
        d.tail.push_back({terms[i].c / lc, terms[i].m});
    Poly monic = p * (1 / lc);
    d.whole = std::move(monic);
    return d;
}

}  // namespace detail

// Full tail reduction result. The identity
//   input = sum_i quotients[i] * basis[i] + remainder
// holds exactly, and no remainder term is divisible by any basis leading
// monomial.
struct ReductionResult {
    Poly remainder;
    std::vector<Poly> quotients;
    // telemetry for the reduction hot spot
    int max_degree_seen = 0;
    std::size_t peak_terms = 0;
    std::size_t steps = 0;
};

class GroebnerBasis {
  public:
    MonomialOrder order;
    std::vector<Poly> elements;
    std::vector<Poly> source_generators;

    const std::vector<detail::Divisor>& divisors() const {
        if (divisors_.size() != elements.size()) {
            divisors_.clear();
            for (const auto& g : elements) divisors_.push_back(detail::make_divisor(g, order));
        }
        return divisors_;
    }

  private:
    mutable std::vector<detail::Divisor> divisors_;
};

namespace detail {

inline ReductionResult reduce_full(const Poly& p, const std::vector<Divisor>& divisors,
                                   const MonomialOrder& order, bool want_quotients) {
    ReductionResult res;
    res.quotients.resize(want_quotients ? divisors.size() : 0);
    std::vector<std::vector<Term>> quotient_terms(want_quotients ? divisors.size() : 0);

    Geobucket bucket(order);
    bucket.add_poly(p);
    std::vector<Term> remainder;
    while (auto t = bucket.extract_leading()) {
        res.max_degree_seen = std::max(res.max_degree_seen, t->m.degree());
        res.peak_terms = std::max(res.peak_terms, bucket.live_terms() + remainder.size() + 1);
        bool reduced = false;
        for (std::size_t gi = 0; gi < divisors.size(); ++gi) {
            const Divisor& d = divisors[gi];
            if (!d.lead.divides(t->m)) continue;
            Monomial q = t->m / d.lead;
            std::vector<Term> sub;
            sub.reserve(d.tail.size());
            for (const auto& u : d.tail) sub.push_back({-(u.c * t->c), u.m * q});
            bucket.add(std::move(sub));
            if (want_quotients) quotient_terms[gi].push_back({t->c, q});
            ++res.steps;
            reduced = true;
            break;
        }
        if (!reduced) remainder.push_back(std::move(*t));
    }
    // Extraction yields strictly descending monomials under the division
    // order; re-canonicalize only when that differs from the storage order.
    if (order.is_default_lex()) res.remainder = Poly::from_canonical(std::move(remainder));
    else res.remainder = Poly::from_terms(std::move(remainder));
    if (want_quotients)
        for (std::size_t gi = 0; gi < divisors.size(); ++gi)
            res.quotients[gi] = Poly::from_terms(std::move(quotient_terms[gi]));
    return res;
}

}  // namespace detail

inline ReductionResult normal_form(const Poly& p, const GroebnerBasis& gb,
                                   bool want_quotients = true) {
    return detail::reduce_full(p, gb.divisors(), gb.order, want_quotients);
}

inline bool ideal_member(const Poly& p, const GroebnerBasis& gb) {
    return normal_form(p, gb, /*want_quotients=*/false).remainder.is_zero();
}

// Buchberger's algorithm with the coprimality and chain criteria and
// normal (smallest-lcm) pair selection. Returns the reduced monic basis,
// deterministic for fixed inputs.
inline GroebnerBasis buchberger(const std::vector<Poly>& generators, MonomialOrder order = {}) {
    if (generators.empty()) throw std::invalid_argument("empty generator list");

    std::vector<detail::Divisor> basis;
    struct Pair {
        Monomial lcm;
        std::size_t i, j;
    };
    std::vector<Pair> pending;

    auto pair_less = [&order](const Pair& a, const Pair& b) {
        int cmp = order.compare(a.lcm, b.lcm);
        if (cmp != 0) return cmp < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    bool unit_found = false;
    auto add_element = [&](const Poly& p) {
        if (p.is_zero()) return;
        if (p.is_constant()) {
            unit_found = true;
            return;
        }
        detail::Divisor d = detail::make_divisor(p, order);
        std::size_t idx = basis.size();
        for (std::size_t i = 0; i < idx; ++i)
            pending.push_back({Monomial::lcm(basis[i].lead, d.lead), i, idx});
        basis.push_back(std::move(d));
    };

    for (const auto& g : generators) add_element(g);

    while (!pending.empty() && !unit_found) {
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair pair = *it;
        pending.erase(it);

        const auto& f = basis[pair.i];
        const auto& g = basis[pair.j];
        if (Monomial::coprime(f.lead, g.lead)) continue;  // Buchberger's first criterion

        // Chain criterion: some k with LT(k) | lcm and both pairs already settled.
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pair.i || k == pair.j) continue;
            if (!basis[k].lead.divides(pair.lcm)) continue;
            auto key1 = std::minmax(pair.i, k);
            auto key2 = std::minmax(pair.j, k);
            bool p1_pending = false, p2_pending = false;
            for (const auto& pr : pending) {
                if (pr.i == key1.first && pr.j == key1.second) p1_pending = true;
                if (pr.i == key2.first && pr.j == key2.second) p2_pending = true;
            }
            if (!p1_pending && !p2_pending) skip = true;
        }
        if (skip) continue;

        Monomial mf = pair.lcm / f.lead;
        Monomial mg = pair.lcm / g.lead;
        Poly spoly = scaled_shift(Rational(1), mf, f.whole) - scaled_shift(Rational(1), mg, g.whole);
        Poly rem = detail::reduce_full(spoly, basis, order, false).remainder;
        add_element(rem);
    }

    GroebnerBasis gb;
    gb.order = order;
    gb.source_generators = generators;
    if (unit_found) {
        gb.elements = {Poly::one()};
        return gb;
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (basis[j].lead.divides(basis[i].lead)) {
                if (basis[j].lead == basis[i].lead) redundant = j < i;
                else redundant = true;
            }
        }
        if (!redundant) keep.push_back(i);
    }
    // Tail-reduce each survivor against the others, then sort by leading
    // monomial so the output is canonical.
    std::vector<Poly> reduced;
    for (std::size_t idx : keep) {
        std::vector<detail::Divisor> others;
        for (std::size_t jdx : keep)
            if (jdx != idx) others.push_back(basis[jdx]);
        Poly r = detail::reduce_full(basis[idx].whole, others, order, false).remainder;
        if (!r.is_zero()) reduced.push_back(r * (1 / r.leading_term().c));
    }
    std::sort(reduced.begin(), reduced.end(), [&order](const Poly& a, const Poly& b) {
        return order.compare(a.leading_term().m, b.leading_term().m) < 0;
    });
    gb.elements = std::move(reduced);
    return gb;
}

// Rabinowitsch refutation: proves that no parameter assignment satisfies
// all eqs = 0 and all neqs != 0 by showing 1 lies in the ideal generated by
// eqs together with t * prod(neqs) - 1. A false answer is inconclusive; the
// basis is returned for inspection.
struct RefuteResult {
    bool refuted = false;
    GroebnerBasis basis;
    explicit operator bool() const { return refuted; }
};

inline RefuteResult refute(const std::vector<Poly>& eqs, const std::vector<Poly>& neqs) {
    for (const auto* list : {&eqs, &neqs})
        for (const auto& p : *list)
            if (p.has_main_var())
                throw std::invalid_argument("main variable encountered in refute()");

    std::vector<Poly> gens;
    for (const auto& p : eqs)
        if (!p.is_zero()) gens.push_back(p);
    if (!neqs.empty()) {
        Poly prod = Poly::one();
        for (const auto& p : neqs) prod *= p;
        gens.push_back(Poly::variable(var_id("t")) * prod - Poly::one());
    }
    if (gens.empty()) return {};

    RefuteResult res;
    res.basis = buchberger(gens, MonomialOrder{});
    res.refuted = res.basis.elements.size() == 1 && res.basis.elements[0] == Poly::one();
    return res;
}

}  // namespace sympcert
