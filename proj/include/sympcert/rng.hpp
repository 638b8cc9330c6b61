#pragma once

#include <cstdint>
#include <stdexcept>

#include "sympcert/rational.hpp"
#include "sympcert/symmat.hpp"

namespace sympcert {

// Deterministic splitmix64 stream. The only entropy source anywhere in the
// toolkit; fixed seed means bit-identical runs on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        Rng g(seed ^ (0x632be59bd9b4e019ull * (trial + 1)));
        g.next();
        return g;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    long uniform(long lo, long hi) {
        return lo + long(next() % std::uint64_t(hi - lo + 1));
    }

    // Small-height rationals: numerator in [-9,9], denominator in [1,9].
    Rational rational() {
        Rational r(uniform(-9, 9), uniform(1, 9));
        r.canonicalize();
        return r;
    }

    Rational rational_nonzero() {
        for (int i = 0; i < 1000; ++i) {
            Rational r = rational();
            if (r != 0) return r;
        }
        throw std::runtime_error("rational_nonzero: rejection budget exhausted");
    }

    RatMatrix matrix(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rational();
        return m;
    }

    RatMatrix invertible(std::size_t n, int* redraws = nullptr) {
        for (int i = 0; i < 1000; ++i) {
            RatMatrix m = matrix(n);
            if (m.det() != 0) return m;
            if (redraws) ++*redraws;
        }
        throw std::runtime_error("invertible draw: rejection budget exhausted");
    }

    // det = 1 via free entries and the solved fourth entry.
    RatMatrix sl2() {
        Rational a = rational_nonzero(), b = rational(), c = rational();
        RatMatrix m(2, 2);
        m.at(0, 0) = a;
        m.at(0, 1) = b;
        m.at(1, 0) = c;
        m.at(1, 1) = (1 + b * c) / a;
        return m;
    }

    // diag(w, 1/w), the shape of an ordinary/CM-adapted period matrix.
    RatMatrix diag_unit() {
        Rational w = rational_nonzero();
        RatMatrix m(2, 2);
        m.at(0, 0) = w;
        m.at(1, 1) = 1 / w;
        return m;
    }

    RatMatrix lower_triangular_sl2() {
        Rational a = rational_nonzero();
        RatMatrix m(2, 2);
        m.at(0, 0) = a;
        m.at(1, 0) = rational();
        m.at(1, 1) = 1 / a;
        return m;
    }

  private:
    std::uint64_t state_;
};

}  // namespace sympcert
