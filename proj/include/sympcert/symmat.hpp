#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sympcert/poly.hpp"

namespace sympcert {

// Dense matrix with polynomial entries, row-major.
class SymMatrix {
  public:
    SymMatrix() = default;
    SymMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Poly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    // 1-based accessor matching the paper-style P11..P44 element names.
    const Poly& e(int i, int j) const { return at(std::size_t(i - 1), std::size_t(j - 1)); }

    bool operator==(const SymMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> entries_;
};

inline SymMatrix mat_mul(const SymMatrix& a, const SymMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
    SymMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Poly acc;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a.at(i, k) * b.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

inline SymMatrix mat_add(const SymMatrix& a, const SymMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix dimension mismatch");
    SymMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

// Exact determinant for n <= 4. The 4x4 case expands along the first two
// rows (Laplace) so each 2x2 minor is computed once.
inline Poly mat_det(const SymMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return Poly::one();
    if (n == 1) return a.at(0, 0);
    if (n == 2) return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    if (n == 3) {
        // Cofactor expansion along the first row with cyclic column indices.
        Poly det;
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            det += a.at(0, j) * (a.at(1, j1) * a.at(2, j2) - a.at(1, j2) * a.at(2, j1));
        }
        return det;
    }
    if (n == 4) {
        auto top = [&](std::size_t i, std::size_t j) {
            return a.at(0, i) * a.at(1, j) - a.at(0, j) * a.at(1, i);
        };
        auto bot = [&](std::size_t i, std::size_t j) {
            return a.at(2, i) * a.at(3, j) - a.at(2, j) * a.at(3, i);
        };
        Poly det = top(0, 1) * bot(2, 3);
        det -= top(0, 2) * bot(1, 3);
        det += top(0, 3) * bot(1, 2);
        det += top(1, 2) * bot(0, 3);
        det -= top(1, 3) * bot(0, 2);
        det += top(2, 3) * bot(0, 1);
        return det;
    }
    throw std::invalid_argument("determinant only supported for n <= 4");
}

// J swapping coordinates 2 and 3 of a 4-dimensional space; the paper's J_{2,3}.
inline SymMatrix j23() {
    SymMatrix m(4, 4);
    m.at(0, 0) = Poly::one();
    m.at(1, 2) = Poly::one();
    m.at(2, 1) = Poly::one();
    m.at(3, 3) = Poly::one();
    return m;
}

// Change of basis sending {w_1..w_h, w'_1..w'_{g-h}, e_1..e_h, e'_1..e'_{g-h}}
// to {w_1..w_h, e_1..e_h, w'_1..w'_{g-h}, e'_1..e'_{g-h}}; an involution.
inline SymMatrix j_blockswap(std::size_t h, std::size_t g) {
    if (h == 0 || h > g) throw std::invalid_argument("invalid blockswap dimensions");
    std::size_t hp = g - h, n = 2 * g;
    // target position of source basis vector k
    std::vector<std::size_t> dest(n);
    for (std::size_t i = 0; i < h; ++i) dest[i] = i;
    for (std::size_t i = 0; i < hp; ++i) dest[h + i] = 2 * h + i;
    for (std::size_t i = 0; i < h; ++i) dest[g + i] = h + i;
    for (std::size_t i = 0; i < hp; ++i) dest[g + h + i] = 2 * h + hp + i;
    SymMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m.at(dest[k], k) = Poly::one();
    return m;
}

// Exact rational matrix for witness instances.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
        RatMatrix r(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    Rational det() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        RatMatrix m = *this;
        std::size_t n = rows_;
        Rational d(1);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            while (pivot < n && m.at(pivot, col) == 0) ++pivot;
            if (pivot == n) return Rational(0);
            if (pivot != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
                d = -d;
            }
            d *= m.at(col, col);
            Rational inv = 1 / m.at(col, col);
            for (std::size_t i = col + 1; i < n; ++i) {
                if (m.at(i, col) == 0) continue;
                Rational f = m.at(i, col) * inv;
                for (std::size_t j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
            }
        }
        return d;
    }

    RatMatrix inverse() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> entries_;
};

// Exact inverse by Gauss-Jordan elimination. Throws on singular input.
inline RatMatrix mat_inverse_rational(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = a.rows();
    RatMatrix m = a, inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) throw std::domain_error("singular matrix");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m.at(pivot, j), m.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rational p = 1 / m.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m.at(col, j) *= p;
            inv.at(col, j) *= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m.at(i, col) == 0) continue;
            Rational f = m.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                m.at(i, j) -= f * m.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

inline RatMatrix RatMatrix::inverse() const { return mat_inverse_rational(*this); }

}  // namespace sympcert
