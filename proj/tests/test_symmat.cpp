#include <catch2/catch_amalgamated.hpp>

#include "sympcert/relations.hpp"
#include "sympcert/rng.hpp"
#include "sympcert/symmat.hpp"

using namespace sympcert;

namespace {

SymMatrix y_matrix() {
    SymMatrix y(4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            y.at(std::size_t(i - 1), std::size_t(j - 1)) =
                Poly::variable(VariableTable::x_id(i, j));
    return y;
}

SymMatrix random_sym(Rng& g, std::size_t n) {
    SymMatrix m(n, n);
    std::vector<const char*> pool = {"c11", "c12", "d21", "e11"};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly p(g.rational());
            if (g.uniform(0, 1)) p += Poly::variable(pool[std::size_t(g.uniform(0, 3))]);
            m.at(i, j) = p;
        }
    return m;
}

}  // namespace

TEST_CASE("J is an involution and multiplication respects identity") {
    SymMatrix j = j23();
    REQUIRE(mat_mul(j, j) == SymMatrix::identity(4));
    SymMatrix y = y_matrix();
    REQUIRE(mat_mul(SymMatrix::identity(4), y) == y);
    REQUIRE_THROWS_AS(mat_mul(SymMatrix(4, 4), SymMatrix(3, 3)), std::invalid_argument);
}

TEST_CASE("pipeline collapses to the identity on trivial blocks") {
    // M and N both [[I,0],[0,I]] leaves M*N = I.
    Profile trivial;
    PipelineMatrices pm = pipeline_matrices(trivial);
    std::map<std::size_t, Poly> ident;
    for (const char* s : {"d11", "d22", "e11", "e22"}) ident[var_id(s)] = Poly::one();
    for (const char* s : {"d12", "d21", "e12", "e21", "f11", "f12", "f21", "f22"})
        ident[var_id(s)] = Poly();
    SymMatrix m_id(4, 4), n_id(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            m_id.at(i, k) = pm.M.at(i, k).substitute(ident);
        }
    std::map<std::size_t, Poly> nident;
    for (const char* s : {"c11", "c22"}) nident[var_id(s)] = Poly::one();
    for (const char* s : {"c12", "c21", "b11", "b12", "b21", "b22"}) nident[var_id(s)] = Poly();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) n_id.at(i, k) = pm.N.at(i, k).substitute(nident);
    REQUIRE(mat_mul(m_id, n_id) == SymMatrix::identity(4));
}

TEST_CASE("determinants: permutations, rationals, symbolic") {
    REQUIRE(mat_det(j23()) == -Poly::one());  // one transposition of I4
    RatMatrix d(2, 2);
    d.at(0, 0) = 5;
    d.at(1, 1) = Rational(1, 5);
    REQUIRE(d.det() == 1);
    SymMatrix non_square(2, 3);
    REQUIRE_THROWS_AS(mat_det(non_square), std::invalid_argument);
}

TEST_CASE("det is multiplicative on random symbolic matrices") {
    Rng g(1234);
    for (std::size_t n : {std::size_t(2), std::size_t(3)}) {
        for (int rep = 0; rep < 4; ++rep) {
            SymMatrix a = random_sym(g, n), b = random_sym(g, n);
            REQUIRE(mat_det(mat_mul(a, b)) == mat_det(a) * mat_det(b));
        }
    }
}

TEST_CASE("4x4 Laplace expansion agrees with cofactor recursion") {
    Rng g(777);
    for (int rep = 0; rep < 3; ++rep) {
        SymMatrix a = random_sym(g, 4);
        // independent route: expansion along the first row with 3x3 minors
        Poly det;
        for (std::size_t j = 0; j < 4; ++j) {
            SymMatrix minor(3, 3);
            for (std::size_t r = 1; r < 4; ++r) {
                std::size_t cc = 0;
                for (std::size_t c = 0; c < 4; ++c) {
                    if (c == j) continue;
                    minor.at(r - 1, cc++) = a.at(r, c);
                }
            }
            Poly contrib = a.at(0, j) * mat_det(minor);
            det += (j % 2 == 0) ? contrib : -contrib;
        }
        REQUIRE(mat_det(a) == det);
    }
}

TEST_CASE("permutation matrices") {
    REQUIRE(j_blockswap(1, 2) == j23());
    REQUIRE(mat_mul(j_blockswap(1, 2), j_blockswap(1, 2)) == SymMatrix::identity(4));
    // involutive whenever the two factors have equal dimension
    SymMatrix big = j_blockswap(2, 4);  // 8x8
    REQUIRE(big.rows() == 8);
    REQUIRE(mat_mul(big, big) == SymMatrix::identity(8));
    REQUIRE_THROWS_AS(j_blockswap(0, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(j_blockswap(3, 2), std::invalid_argument);
}

TEST_CASE("block interleaving conjugation is involutive") {
    // diag(P, P') conjugated by the blockswap, twice, returns the original.
    Rng g(31);
    SymMatrix p = random_sym(g, 2), pp = random_sym(g, 2);
    SymMatrix diag(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            diag.at(i, j) = p.at(i, j);
            diag.at(i + 2, j + 2) = pp.at(i, j);
        }
    SymMatrix j = j_blockswap(1, 2);
    SymMatrix once = mat_mul(mat_mul(j, diag), j);
    REQUIRE(mat_mul(mat_mul(j, once), j) == diag);
    // interleaved zero pattern: first-factor rows against second-factor
    // columns vanish
    REQUIRE(once.at(0, 1).is_zero());
    REQUIRE(once.at(1, 0).is_zero());
    REQUIRE(once.at(0, 3).is_zero());
    REQUIRE(once.at(3, 0).is_zero());
}

TEST_CASE("rational inverse") {
    REQUIRE(mat_inverse_rational(RatMatrix::identity(4)) == RatMatrix::identity(4));
    RatMatrix d(2, 2);
    d.at(0, 0) = 2;
    d.at(1, 1) = 3;
    RatMatrix dinv = mat_inverse_rational(d);
    REQUIRE(dinv.at(0, 0) == Rational(1, 2));
    REQUIRE(dinv.at(1, 1) == Rational(1, 3));

    Rng g(555);
    for (int rep = 0; rep < 10; ++rep) {
        RatMatrix a = g.invertible(4);
        REQUIRE(a * a.inverse() == RatMatrix::identity(4));
        REQUIRE(a.inverse() * a == RatMatrix::identity(4));
    }
    RatMatrix sing(2, 2);
    sing.at(0, 0) = 1;
    sing.at(0, 1) = 2;
    sing.at(1, 0) = 2;
    sing.at(1, 1) = 4;
    REQUIRE_THROWS_AS(mat_inverse_rational(sing), std::domain_error);
}
