#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sympcert/periodlab.hpp"

using namespace sympcert;

namespace {

// Independent AGM oracle: plain iteration of the recurrence (real inputs,
// both positive, so no branch choices arise).
double agm_oracle(double a, double b) {
    for (int i = 0; i < 40; ++i) {
        double am = (a + b) / 2.0, gm = std::sqrt(a * b);
        a = am;
        b = gm;
    }
    return a;
}

// Quadrature oracle for the real period: omega1 = 2 * int_0^inf
// du / sqrt((u^2 + e1 - e2)(u^2 + e1 - e3)) via the tangent substitution.
double quad_omega1(double a, double b) {
    int n = 400000;
    double h = (kPi / 2.0) / n;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        double t = (i + 0.5) * h;
        double u = std::tan(t);
        double sec2 = 1.0 / (std::cos(t) * std::cos(t));
        sum += sec2 / std::sqrt((u * u + a) * (u * u + b)) * h;
    }
    return 2.0 * sum;
}

// Slow Weierstrass zeta truncation; only good to ~1e-4 but independent of
// the Eisenstein-series route.
Complex zeta_sum(Complex z, Complex w1, Complex w2, int radius = 80) {
    Complex acc = 1.0 / z;
    for (int m = -radius; m <= radius; ++m)
        for (int n = -radius; n <= radius; ++n) {
            if (m == 0 && n == 0) continue;
            Complex w = double(m) * w1 + double(n) * w2;
            acc += 1.0 / (z - w) + 1.0 / w + z / (w * w);
        }
    return acc;
}

const CurveSpec kLemniscatic{Rational(4), Rational(0)};

}  // namespace

TEST_CASE("agm: fixed points and the frozen oracle value") {
    REQUIRE(std::abs(agm(Complex(1), Complex(1)) - Complex(1)) < 1e-15);
    // frozen from the quadratically convergent iteration
    double frozen = 13.458171481725615;
    REQUIRE(std::abs(agm_oracle(24, 6) - frozen) < 1e-12);
    REQUIRE(std::abs(agm(Complex(24), Complex(6)).real() - frozen) < 1e-13);
    // agm(a, a) = a on scattered complex points
    for (Complex a : {Complex(2, 3), Complex(-1, 5), Complex(0.25, -0.125)})
        REQUIRE(std::abs(agm(a, a) - a) < 1e-14 * std::abs(a));
    REQUIRE_THROWS_AS(agm(Complex(1), Complex(-1)), std::domain_error);
    REQUIRE_THROWS_AS(agm(Complex(0), Complex(1)), std::domain_error);
}

TEST_CASE("agm: contraction is quadratic once in the principal branch") {
    Complex a(5, 2), b(1, -1);
    double prev_gap = std::abs(a - b);
    for (int i = 0; i < 6; ++i) {
        Complex am = (a + b) / 2.0;
        Complex gm = std::sqrt(a * b);
        if (std::abs(am - gm) > std::abs(am + gm)) gm = -gm;
        a = am;
        b = gm;
        double gap = std::abs(a - b);
        // quadratic model only meaningful while the square stays above the
        // double-precision floor
        if (i >= 3 && prev_gap > 1e-7)
            REQUIRE(gap <= prev_gap * prev_gap / std::abs(a) * 10.0);
        prev_gap = gap;
    }
}

TEST_CASE("lemniscatic curve: periods against the quadrature oracle") {
    PeriodBasis b = elliptic_periods(kLemniscatic);
    // roots are 1, 0, -1: a = e1-e2 = 1, b = e1-e3 = 2
    double oracle = quad_omega1(1.0, 2.0);
    REQUIRE(std::abs(b.omega1.real() - oracle) < 1e-9);
    REQUIRE(std::abs(b.omega1.real() - 2.6220575542921) < 1e-10);  // frozen
    REQUIRE(std::abs(b.omega1.imag()) < 1e-12);
    // CM by i forces a square lattice
    Complex tau = b.omega2 / b.omega1;
    REQUIRE(std::abs(tau - Complex(0, 1)) < 1e-10);
    REQUIRE(tau.imag() > 0);
}

TEST_CASE("legendre residuals") {
    PeriodBasis b = elliptic_periods(kLemniscatic);
    REQUIRE(legendre_residual(b) < 1e-9);
    PeriodBasis paper = to_paper_normalization(b);
    REQUIRE(legendre_residual(paper) < 1e-9);

    // zeroed quasi-periods leave |0 - 2 pi i| = 2 pi
    PeriodBasis gutted = b;
    gutted.eta1 = gutted.eta2 = Complex(0);
    REQUIRE(std::abs(legendre_residual(gutted) - 2.0 * kPi) < 1e-12);

    // consistent scaling leaves the residual unchanged: omega -> l*omega,
    // eta -> eta/l is the quasi-period scaling for lattice dilation
    PeriodBasis scaled = b;
    double l = 3.0;
    scaled.omega1 *= l;
    scaled.omega2 *= l;
    scaled.eta1 /= l;
    scaled.eta2 /= l;
    REQUIRE(std::abs(legendre_residual(scaled) - legendre_residual(b)) < 1e-9);
}

TEST_CASE("quasi-periods agree with the zeta-function oracle") {
    PeriodBasis b = elliptic_periods(kLemniscatic);
    // stored eta is the negative of the classical quasi-period 2*zeta(w/2)
    Complex eta1_cls = 2.0 * zeta_sum(b.omega1 / 2.0, b.omega1, b.omega2);
    Complex eta2_cls = 2.0 * zeta_sum(b.omega2 / 2.0, b.omega1, b.omega2);
    REQUIRE(std::abs(b.eta1 + eta1_cls) < 1e-4);
    REQUIRE(std::abs(b.eta2 + eta2_cls) < 1e-4);
}

TEST_CASE("weierstrass scaling law") {
    // (g2, g3) -> (l^4 g2, l^6 g3) divides omega1 by l
    PeriodBasis b = elliptic_periods(kLemniscatic);
    CurveSpec scaled{Rational(4) * 16, Rational(0)};  // l = 2
    PeriodBasis bs = elliptic_periods(scaled);
    REQUIRE(std::abs(bs.omega1 * 2.0 - b.omega1) < 1e-12);
    REQUIRE(std::abs(bs.omega2 * 2.0 - b.omega2) < 1e-12);
    REQUIRE(legendre_residual(bs) < 1e-9);
}

TEST_CASE("other curves: legendre holds across discriminant signs") {
    for (auto [g2, g3] : {std::pair{7L, 1L}, {5L, -2L}, {4L, 3L}, {12L, 8L}}) {
        CurveSpec c{Rational(g2), Rational(g3)};
        if (c.discriminant() == 0) continue;
        PeriodBasis b = elliptic_periods(c);
        INFO("g2=" << g2 << " g3=" << g3);
        REQUIRE((b.omega2 / b.omega1).imag() > 0);
        REQUIRE(legendre_residual(b) < 1e-9);
    }
    REQUIRE_THROWS_AS(elliptic_periods(CurveSpec{Rational(3), Rational(1)}),
                      std::domain_error);  // 27 - 27 = 0
}

TEST_CASE("assemble_split_period: pattern, involution, determinant") {
    PeriodBasis p = elliptic_periods(kLemniscatic);
    PeriodBasis q = elliptic_periods(CurveSpec{Rational(7), Rational(1)});
    CMat4 big = assemble_split_period(p, q);
    // interleaving zero pattern: first-curve rows against second-curve
    // columns and vice versa
    for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {2, 1}, {2, 3}})
        REQUIRE(std::abs(big[std::size_t(i) * 4 + std::size_t(j)]) == 0.0);
    for (auto [i, j] : {std::pair{1, 0}, {1, 2}, {3, 0}, {3, 2}})
        REQUIRE(std::abs(big[std::size_t(i) * 4 + std::size_t(j)]) == 0.0);
    // determinant multiplicativity under the permutation similarity
    Complex lhs = det4(big);
    Complex rhs = det2(period_matrix(p)) * det2(period_matrix(q));
    REQUIRE(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    // paper normalization: det of each factor is 1/(2 pi i)
    PeriodBasis pp = to_paper_normalization(p);
    REQUIRE(std::abs(det2(period_matrix(pp)) - Complex(1) / Complex(0, 2 * kPi)) < 1e-9);
    // normalization mismatch is refused
    REQUIRE_THROWS_AS(assemble_split_period(pp, q), std::invalid_argument);
}

TEST_CASE("isogeny residuals: multiplication by n and zero map") {
    PeriodBasis p = elliptic_periods(kLemniscatic);
    for (long n : {1L, 2L, 5L}) {
        CMat2 nn{Complex(double(n)), 0, 0, Complex(double(n))};
        REQUIRE(isogeny_residual(nn, p, p, nn) < 1e-10);
    }
    CMat2 zero{};
    REQUIRE(isogeny_residual(zero, p, p, zero) == 0.0);
}

TEST_CASE("isogeny residual: CM by i on the lemniscatic curve") {
    PeriodBasis p = elliptic_periods(kLemniscatic);
    // Betti action of z -> iz on the square lattice (w1, w2 = i w1):
    // i*w1 = w2, i*w2 = -w1.
    CMat2 theta_b{Complex(0), Complex(-1), Complex(1), Complex(0)};
    // solve for the de Rham matrix: theta_dr = Pi * theta_b * Pi^{-1}
    CMat2 pi = period_matrix(p);
    Complex det = det2(pi);
    CMat2 piinv{pi[3] / det, -pi[1] / det, -pi[2] / det, pi[0] / det};
    auto mul = [](const CMat2& x, const CMat2& y) {
        CMat2 r{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) r[i * 2 + j] += x[i * 2 + k] * y[k * 2 + j];
        return r;
    };
    CMat2 theta_dr = mul(mul(pi, theta_b), piinv);
    // the de Rham matrix is diag(i, -i): Gaussian-rational to 1e-8
    REQUIRE(std::abs(theta_dr[0] - Complex(0, 1)) < 1e-8);
    REQUIRE(std::abs(theta_dr[3] - Complex(0, -1)) < 1e-8);
    REQUIRE(std::abs(theta_dr[1]) < 1e-8);
    REQUIRE(std::abs(theta_dr[2]) < 1e-8);
    REQUIRE(isogeny_residual(theta_dr, p, p, theta_b) < 1e-8);
}
