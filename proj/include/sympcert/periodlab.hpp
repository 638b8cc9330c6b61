#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sympcert/rational.hpp"

namespace sympcert {

using Complex = std::complex<double>;
using CMat2 = std::array<Complex, 4>;   // row-major 2x2
using CMat4 = std::array<Complex, 16>;  // row-major 4x4

inline constexpr double kPi = 3.14159265358979323846;

// Optimal-branch complex AGM: the square root is taken so the pair stays in
// the principal branch, ties broken toward nonnegative real part.
inline Complex agm(Complex a, Complex b) {
    if (a == Complex(0) || b == Complex(0) || a == -b)
        throw std::domain_error("agm: degenerate input");
    for (int i = 0; i < 64; ++i) {
        Complex am = (a + b) / 2.0;
        Complex gm = std::sqrt(a * b);
        if (std::abs(am - gm) > std::abs(am + gm) ||
            (std::abs(am - gm) == std::abs(am + gm) && gm.real() < 0))
            gm = -gm;
        a = am;
        b = gm;
        if (std::abs(a - b) <= 1e-15 * std::abs(a)) break;
    }
    return a;
}

struct CurveSpec {
    Rational g2, g3;  // y^2 = 4x^3 - g2 x - g3
    Rational discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }
};

enum class Normalization { Raw, Paper };

// Full lattice periods (omega1, omega2) with Im(omega2/omega1) > 0 and the
// matching quasi-periods. The eta entries carry the sign that makes
// omega1*eta2 - omega2*eta1 = 2*pi*i, i.e. det of the paper-normalized
// period matrix equal to 1/(2*pi*i).
struct PeriodBasis {
    Complex omega1, omega2, eta1, eta2;
    Normalization normalization = Normalization::Raw;
};

namespace detail {

// Roots of 4x^3 - g2 x - g3, deterministically ordered (descending real
// part, then descending imaginary part).
inline std::array<Complex, 3> cubic_roots(double g2, double g3) {
    // depressed cubic x^3 + px + q with p = -g2/4, q = -g3/4
    double p = -g2 / 4.0, q = -g3 / 4.0;
    Complex disc = Complex(q * q / 4.0 + p * p * p / 27.0);
    Complex sq = std::sqrt(disc);
    Complex u3 = Complex(-q / 2.0) + sq;
    if (std::abs(u3) < 1e-18) u3 = Complex(-q / 2.0) - sq;
    Complex u = std::pow(u3, 1.0 / 3.0);
    std::array<Complex, 3> roots;
    const Complex w(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
        Complex uk = u * (k == 0 ? Complex(1) : (k == 1 ? w : w * w));
        roots[std::size_t(k)] = uk - Complex(p / 3.0) / uk;
    }
    // one Newton polish step each
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            Complex f = r * r * r + p * r + q;
            Complex df = 3.0 * r * r + p;
            if (std::abs(df) > 1e-300) r -= f / df;
        }
        if (std::abs(r.imag()) < 1e-12 * (1.0 + std::abs(r.real()))) r = Complex(r.real(), 0.0);
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return roots;
}

// E2(tau) = 1 - 24 sum sigma_1(n) q^n, q = exp(2 pi i tau).
inline Complex eisenstein_e2(Complex tau) {
    Complex q = std::exp(Complex(0, 2.0 * kPi) * tau);
    if (std::abs(q) >= 0.999) throw std::domain_error("eisenstein_e2: |q| too close to 1");
    Complex sum(0);
    Complex qn(1);
    for (int n = 1; n <= 512; ++n) {
        qn *= q;
        double sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sigma += d;
        Complex term = sigma * qn;
        sum += term;
        if (std::abs(qn) < 1e-18) break;
    }
    return Complex(1) - 24.0 * sum;
}

}  // namespace detail

inline PeriodBasis elliptic_periods(const CurveSpec& curve) {
    if (curve.discriminant() == 0)
        throw std::domain_error("elliptic_periods: zero discriminant");
    double g2 = curve.g2.get_d(), g3 = curve.g3.get_d();
    auto e = detail::cubic_roots(g2, g3);

    Complex w1 = Complex(kPi) / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[0] - e[1]));
    Complex w2 = Complex(0, kPi) / agm(std::sqrt(e[0] - e[2]), std::sqrt(e[1] - e[2]));
    Complex tau = w2 / w1;
    if (tau.imag() < 0) {
        w2 = -w2;
        tau = -tau;
    }

    // Quasi-periods from the weight-two Eisenstein series at tau and -1/tau;
    // the Legendre identity is then a non-trivial consistency check.
    Complex eta_a = (kPi * kPi / 3.0) * detail::eisenstein_e2(tau) / w1;
    Complex eta_b = (kPi * kPi / 3.0) * detail::eisenstein_e2(-1.0 / tau) / w2;

    PeriodBasis basis;
    basis.omega1 = w1;
    basis.omega2 = w2;
    basis.eta1 = -eta_a;
    basis.eta2 = -eta_b;
    return basis;
}

inline PeriodBasis to_paper_normalization(PeriodBasis b) {
    if (b.normalization == Normalization::Paper) return b;
    Complex s = Complex(0, 2.0 * kPi);
    b.omega1 /= s;
    b.omega2 /= s;
    b.eta1 /= s;
    b.eta2 /= s;
    b.normalization = Normalization::Paper;
    return b;
}

// 2x2 period matrix: rows are the de Rham basis (omega-form, eta-form),
// columns the Betti cycles.
inline CMat2 period_matrix(const PeriodBasis& b) {
    return {b.omega1, b.omega2, b.eta1, b.eta2};
}

inline double legendre_residual(const PeriodBasis& b) {
    Complex det = b.omega1 * b.eta2 - b.omega2 * b.eta1;
    if (b.normalization == Normalization::Raw) return std::abs(det - Complex(0, 2.0 * kPi));
    return std::abs(det - Complex(1) / Complex(0, 2.0 * kPi));
}

// J_{1,2} * diag(Pi, Pi') * J_{1,2}: the interleaved period matrix of a
// product surface.
inline CMat4 assemble_split_period(const PeriodBasis& p, const PeriodBasis& pp) {
    if (p.normalization != pp.normalization)
        throw std::invalid_argument("assemble_split_period: normalization mismatch");
    CMat2 a = period_matrix(p), b = period_matrix(pp);
    // permutation sigma = (2 3) on rows and columns of diag(a, b)
    CMat4 out{};
    auto diag = [&](std::size_t i, std::size_t j) -> Complex {
        if (i < 2 && j < 2) return a[i * 2 + j];
        if (i >= 2 && j >= 2) return b[(i - 2) * 2 + (j - 2)];
        return Complex(0);
    };
    auto sigma = [](std::size_t k) { return k == 1 ? std::size_t(2) : (k == 2 ? std::size_t(1) : k); };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[i * 4 + j] = diag(sigma(i), sigma(j));
    return out;
}

inline Complex det4(const CMat4& m) {
    auto minor2 = [&m](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        return m[r0 * 4 + c0] * m[r1 * 4 + c1] - m[r0 * 4 + c1] * m[r1 * 4 + c0];
    };
    return minor2(0, 1, 0, 1) * minor2(2, 3, 2, 3) - minor2(0, 1, 0, 2) * minor2(2, 3, 1, 3) +
           minor2(0, 1, 0, 3) * minor2(2, 3, 1, 2) + minor2(0, 1, 1, 2) * minor2(2, 3, 0, 3) -
           minor2(0, 1, 1, 3) * minor2(2, 3, 0, 2) + minor2(0, 1, 2, 3) * minor2(2, 3, 0, 1);
}

inline Complex det2(const CMat2& m) { return m[0] * m[3] - m[1] * m[2]; }

// Frobenius norm of theta_dR * Pi - Pi' * theta_B.
inline double isogeny_residual(const CMat2& theta_dr, const PeriodBasis& p,
                               const PeriodBasis& pprime, const CMat2& theta_b) {
    CMat2 pi = period_matrix(p), pip = period_matrix(pprime);
    auto mul = [](const CMat2& x, const CMat2& y) {
        CMat2 r{};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) r[i * 2 + j] += x[i * 2 + k] * y[k * 2 + j];
        return r;
    };
    CMat2 lhs = mul(theta_dr, pi), rhs = mul(pip, theta_b);
    double norm = 0;
    for (std::size_t i = 0; i < 4; ++i) norm += std::norm(lhs[i] - rhs[i]);
    return std::sqrt(norm);
}

}  // namespace sympcert
