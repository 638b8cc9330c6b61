#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sympcert/symmat.hpp"

namespace sympcert {

enum class RelationId {
    RSF,
    REXCM_LIN,
    REXCME2,
    QE2EXCM,
    QE2E2,
    RSUPSING,
    RA,
    REXCMBAD,
    DETGTILDE,
};

inline const std::vector<RelationId>& all_relations() {
    static const std::vector<RelationId> ids = {
        RelationId::RSF,      RelationId::REXCM_LIN, RelationId::REXCME2,
        RelationId::QE2EXCM,  RelationId::QE2E2,     RelationId::RSUPSING,
        RelationId::RA,       RelationId::REXCMBAD,  RelationId::DETGTILDE};
    return ids;
}

inline std::string relation_name(RelationId id) {
    switch (id) {
        case RelationId::RSF: return "RSF";
        case RelationId::REXCM_LIN: return "REXCM_LIN";
        case RelationId::REXCME2: return "REXCME2";
        case RelationId::QE2EXCM: return "QE2EXCM";
        case RelationId::QE2E2: return "QE2E2";
        case RelationId::RSUPSING: return "RSUPSING";
        case RelationId::RA: return "RA";
        case RelationId::REXCMBAD: return "REXCMBAD";
        case RelationId::DETGTILDE: return "DETGTILDE";
    }
    throw std::logic_error("unreachable");
}

inline RelationId relation_from_name(const std::string& name) {
    for (RelationId id : all_relations())
        if (relation_name(id) == name) return id;
    throw std::invalid_argument("unknown relation: '" + name + "'");
}

// Per-relation construction knobs. Defaults depend on the relation; see
// default_profile.
struct Profile {
    enum class Block { Identity, Generic };
    enum class Phi { Trivial, Generic };
    enum class Mode { Verbatim, Corrected };
    enum class GtildeOrder { Code, Text };

    Block a0_block = Block::Identity;
    Phi phi0 = Phi::Trivial;
    Phi phiS = Phi::Trivial;
    Mode rsupsing_mode = Mode::Verbatim;
    Mode qe2e2_mode = Mode::Verbatim;
    GtildeOrder gtilde_order = GtildeOrder::Code;

    bool operator==(const Profile&) const = default;
};

inline Profile default_profile(RelationId id) {
    Profile p;
    switch (id) {
        case RelationId::RSF:
        case RelationId::REXCM_LIN:
        case RelationId::RSUPSING:
        case RelationId::RA:
            break;  // identity A0, both Phi trivial
        case RelationId::REXCME2:
            p.phiS = Profile::Phi::Generic;  // phi0 stays trivial (a0=c0=1, b0=0)
            break;
        case RelationId::QE2EXCM:
            p.phi0 = Profile::Phi::Generic;  // phiS stays trivial (aS=cS=1, bS=0)
            break;
        case RelationId::QE2E2:
            p.phi0 = Profile::Phi::Generic;
            p.phiS = Profile::Phi::Generic;
            break;
        case RelationId::REXCMBAD:
            p.a0_block = Profile::Block::Generic;
            break;
        case RelationId::DETGTILDE:
            p.a0_block = Profile::Block::Generic;
            p.phi0 = Profile::Phi::Generic;
            p.phiS = Profile::Phi::Generic;
            break;
    }
    return p;
}

// The six defining quadrics of Sp4 inside M4, in the fixed listing order.
// Built from the symplectic form itself: with Jsym the form matrix in the
// (1,2|3,4) basis split, these are the strictly-upper entries of
// Y^T * Jsym * Y - Jsym.
inline std::vector<Poly> sp4_generators() {
    SymMatrix y(4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            y.at(std::size_t(i - 1), std::size_t(j - 1)) =
                Poly::variable(VariableTable::x_id(i, j));
    SymMatrix jsym(4, 4);
    jsym.at(0, 2) = Poly::one();
    jsym.at(1, 3) = Poly::one();
    jsym.at(2, 0) = -Poly::one();
    jsym.at(3, 1) = -Poly::one();
    SymMatrix yt(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) yt.at(i, j) = y.at(j, i);
    SymMatrix form = mat_mul(mat_mul(yt, jsym), y);
    std::vector<Poly> gens;
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
        gens.push_back(form.at(std::size_t(i), std::size_t(j)) - jsym.at(std::size_t(i), std::size_t(j)));
    return gens;
}

inline Poly det_minus_one() {
    SymMatrix y(4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            y.at(std::size_t(i - 1), std::size_t(j - 1)) =
                Poly::variable(VariableTable::x_id(i, j));
    return mat_det(y) - Poly::one();
}

struct PipelineMatrices {
    SymMatrix M, N, Ftilde, P, G, Gtilde;
};

namespace detail {

inline Poly sym(const char* name) { return Poly::variable(var_id(name)); }

inline SymMatrix block2(const char* prefix) {
    SymMatrix m(2, 2);
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            m.at(std::size_t(i - 1), std::size_t(j - 1)) =
                sym((std::string(prefix) + std::to_string(i) + std::to_string(j)).c_str());
    return m;
}

inline SymMatrix assemble_lower_block_triangular(const SymMatrix& a, const SymMatrix& b,
                                                 const SymMatrix& c) {
    SymMatrix m(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            m.at(i, j) = a.at(i, j);
            m.at(i + 2, j) = b.at(i, j);
            m.at(i + 2, j + 2) = c.at(i, j);
        }
    return m;
}

inline SymMatrix phi_matrix(Profile::Phi kind, const char* a, const char* b, const char* c) {
    SymMatrix m = SymMatrix::identity(4);
    if (kind == Profile::Phi::Generic) {
        m.at(2, 2) = sym(a);
        m.at(3, 2) = sym(b);
        m.at(3, 3) = sym(c);
    }
    return m;
}

}  // namespace detail

// The Appendix pipeline: M = [[As,0],[Bs,Cs]], N = [[A0,0],[B0,C0]],
// Ftilde = M*Y*N, P = J*Ftilde*J, G = PhiS*P*Phi0, and the permuted Gtilde.
inline PipelineMatrices pipeline_matrices(const Profile& profile) {
    using detail::block2;
    PipelineMatrices out;
    SymMatrix y(4, 4);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            y.at(std::size_t(i - 1), std::size_t(j - 1)) =
                Poly::variable(VariableTable::x_id(i, j));

    out.M = detail::assemble_lower_block_triangular(block2("d"), block2("f"), block2("e"));
    SymMatrix a0 = profile.a0_block == Profile::Block::Generic ? block2("a")
                                                               : SymMatrix::identity(2);
    out.N = detail::assemble_lower_block_triangular(a0, block2("b"), block2("c"));
    out.Ftilde = mat_mul(mat_mul(out.M, y), out.N);
    SymMatrix j = j23();
    out.P = mat_mul(mat_mul(j, out.Ftilde), j);
    SymMatrix phiS = detail::phi_matrix(profile.phiS, "aS", "bS", "cS");
    SymMatrix phi0 = detail::phi_matrix(profile.phi0, "a0", "b0", "c0");
    out.G = mat_mul(mat_mul(phiS, out.P), phi0);

    // Row arrangement of the appendix code; the text's variant swaps the
    // last two rows, flipping only the sign of the determinant.
    const int code_rows[4][4][2] = {
        {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
        {{1, 3}, {1, 4}, {2, 3}, {2, 4}},
        {{3, 3}, {3, 4}, {4, 3}, {4, 4}},
        {{3, 1}, {3, 2}, {4, 1}, {4, 2}},
    };
    out.Gtilde = SymMatrix(4, 4);
    for (int r = 0; r < 4; ++r) {
        int rr = r;
        if (profile.gtilde_order == Profile::GtildeOrder::Text && r >= 2) rr = 5 - r;  // swap rows 3,4
        for (int cidx = 0; cidx < 4; ++cidx)
            out.Gtilde.at(std::size_t(r), std::size_t(cidx)) =
                out.G.e(code_rows[rr][cidx][0], code_rows[rr][cidx][1]);
    }
    return out;
}

// The two linear factors of R_{s,f}, exactly as displayed in the splitting
// argument (these are not produced by the appendix code; the displayed
// forms carry the transposed C0 indexing, which the instance recovery in
// the certifier mirrors).
inline std::pair<Poly, Poly> rsf_factors() {
    using detail::sym;
    auto X = [](int i, int j) { return Poly::variable(VariableTable::x_id(i, j)); };
    Poly f12 = sym("d11") * (sym("c11") * X(1, 3) + sym("c12") * X(1, 4)) +
               sym("d12") * (sym("c11") * X(2, 3) + sym("c12") * X(2, 4));
    Poly f24 = sym("c21") * (sym("f11") * X(1, 3) + sym("f12") * X(2, 3) + sym("e11") * X(3, 3) +
                             sym("e12") * X(4, 3)) +
               sym("c22") * (sym("f11") * X(1, 4) + sym("f12") * X(2, 4) + sym("e11") * X(3, 4) +
                             sym("e12") * X(4, 4));
    return {f12, f24};
}

inline void validate_profile(RelationId id, const Profile& profile) {
    if (id == RelationId::REXCME2 && profile.phi0 != Profile::Phi::Trivial)
        throw std::invalid_argument("REXCME2 requires a trivial Phi0 (a0=c0=1, b0=0)");
    if (id == RelationId::QE2EXCM && profile.phiS != Profile::Phi::Trivial)
        throw std::invalid_argument("QE2EXCM requires a trivial PhiS (aS=cS=1, bS=0)");
}

inline Poly build_relation(RelationId id, const Profile& profile) {
    validate_profile(id, profile);
    using detail::sym;
    auto X = [](int i, int j) { return Poly::variable(VariableTable::x_id(i, j)); };

    switch (id) {
        case RelationId::RSF: {
            auto [f12, f24] = rsf_factors();
            return f12 * f24;
        }
        case RelationId::REXCM_LIN: {
            PipelineMatrices pm = pipeline_matrices(profile);
            return pm.P.e(3, 4);
        }
        case RelationId::REXCME2: {
            PipelineMatrices pm = pipeline_matrices(profile);
            return pm.G.e(3, 2) * pm.G.e(4, 4) - pm.G.e(4, 2) * pm.G.e(3, 4);
        }
        case RelationId::QE2EXCM: {
            PipelineMatrices pm = pipeline_matrices(profile);
            return pm.G.e(4, 1) * pm.G.e(4, 4) - pm.G.e(4, 2) * pm.G.e(4, 3);
        }
        case RelationId::QE2E2: {
            PipelineMatrices pm = pipeline_matrices(profile);
            const SymMatrix& g = pm.G;
            Poly second = profile.qe2e2_mode == Profile::Mode::Verbatim
                              ? g.e(1, 1) * g.e(2, 3) - g.e(1, 3) * g.e(2, 4)
                              : g.e(1, 1) * g.e(2, 3) - g.e(1, 3) * g.e(2, 1);
            return (g.e(3, 2) * g.e(2, 4) - g.e(1, 4) * g.e(4, 2)) * second -
                   (g.e(1, 2) * g.e(2, 4) - g.e(1, 4) * g.e(2, 2)) *
                       (g.e(3, 1) * g.e(2, 3) - g.e(1, 3) * g.e(4, 1));
        }
        case RelationId::RSUPSING: {
            PipelineMatrices pm = pipeline_matrices(profile);
            const SymMatrix& p = pm.P;
            Poly last = profile.rsupsing_mode == Profile::Mode::Verbatim
                            ? p.e(3, 1) * p.e(4, 2) - p.e(3, 1) * p.e(4, 1)
                            : p.e(3, 1) * p.e(4, 2) - p.e(3, 2) * p.e(4, 1);
            return sym("d1") * (p.e(1, 1) * p.e(2, 2) - p.e(2, 1) * p.e(1, 2)) *
                       (p.e(3, 3) * p.e(4, 4) - p.e(3, 4) * p.e(4, 3)) -
                   (p.e(1, 3) * p.e(2, 4) - p.e(2, 3) * p.e(1, 4)) * last;
        }
        case RelationId::RA: {
            PipelineMatrices pm = pipeline_matrices(profile);
            const SymMatrix& p = pm.P;
            Poly quad = -X(3, 1) * X(1, 3) - X(4, 1) * X(2, 3) + X(1, 1) * X(3, 3) +
                        X(2, 1) * X(4, 3);
            return p.e(1, 1) * p.e(2, 2) - p.e(1, 2) * p.e(2, 1) - sym("d1") * quad;
        }
        case RelationId::REXCMBAD: {
            PipelineMatrices pm = pipeline_matrices(profile);
            const SymMatrix& f = pm.Ftilde;
            return f.e(2, 1) * f.e(4, 3) - f.e(2, 3) * f.e(4, 1);
        }
        case RelationId::DETGTILDE: {
            PipelineMatrices pm = pipeline_matrices(profile);
            return mat_det(pm.Gtilde);
        }
    }
    throw std::logic_error("unreachable");
}

inline int relation_main_degree(RelationId id) {
    switch (id) {
        case RelationId::REXCM_LIN: return 1;
        case RelationId::RSF:
        case RelationId::REXCME2:
        case RelationId::QE2EXCM:
        case RelationId::RA:
        case RelationId::REXCMBAD: return 2;
        case RelationId::QE2E2:
        case RelationId::RSUPSING:
        case RelationId::DETGTILDE: return 4;
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Symplectic test families. Each entry is numerator / denom^denom_power with
// a shared denominator polynomial; substitution clears denominators by the
// maximal power that occurs.

enum class FamilyId { S_n, S_n_prime, S_pqrn };

struct Family {
    std::array<Poly, 16> numerator{};
    std::array<int, 16> denom_power{};
    Poly denom;
};

inline const Family& family(FamilyId id) {
    auto build = [](FamilyId fid) {
        Family f;
        auto set = [&f](int i, int j, Poly num, int dp = 0) {
            std::size_t k = VariableTable::x_id(i, j);
            f.numerator[k] = std::move(num);
            f.denom_power[k] = dp;
        };
        Poly p = Poly::variable(var_id("p"));
        Poly q = Poly::variable(var_id("q"));
        Poly r = Poly::variable(var_id("r"));
        Poly n = Poly::variable(var_id("n"));
        switch (fid) {
            case FamilyId::S_n:
                // diag(n, 1/n, 1/n, n)
                f.denom = n;
                set(1, 1, n);
                set(2, 2, Poly::one(), 1);
                set(3, 3, Poly::one(), 1);
                set(4, 4, n);
                break;
            case FamilyId::S_n_prime:
                // [[U,0],[0,(U^T)^-1]] with U = [[0, 1/n],[-n, 0]]
                f.denom = n;
                set(1, 2, Poly::one(), 1);
                set(2, 1, -n);
                set(3, 4, n);
                set(4, 3, -Poly::one(), 1);
                break;
            case FamilyId::S_pqrn:
                // [[p,q,0,0],[r,n,0,0],[0,0,n/D,-r/D],[0,0,-q/D,p/D]], D = pn-qr
                f.denom = p * n - q * r;
                set(1, 1, p);
                set(1, 2, q);
                set(2, 1, r);
                set(2, 2, n);
                set(3, 3, n, 1);
                set(3, 4, -r, 1);
                set(4, 3, -q, 1);
                set(4, 4, p, 1);
                break;
        }
        return f;
    };
    static const Family sn = build(FamilyId::S_n);
    static const Family snp = build(FamilyId::S_n_prime);
    static const Family spqrn = build(FamilyId::S_pqrn);
    switch (id) {
        case FamilyId::S_n: return sn;
        case FamilyId::S_n_prime: return snp;
        case FamilyId::S_pqrn: return spqrn;
    }
    throw std::logic_error("unreachable");
}

inline FamilyId family_from_name(const std::string& name) {
    if (name == "S_n") return FamilyId::S_n;
    if (name == "S_n_prime") return FamilyId::S_n_prime;
    if (name == "S_pqrn") return FamilyId::S_pqrn;
    throw std::invalid_argument("unknown family: '" + name + "'");
}

// Substitutes the family matrix for the X variables with the denominator
// cleared: the result is denom^L * p(S) where L is the largest denominator
// power any monomial of p picks up.
inline Poly family_substitute_poly(const Poly& p, const Family& fam) {
    int max_pow = 0;
    for (const auto& t : p.terms()) {
        int lp = 0;
        for (std::size_t k = 0; k < kNumMainVars; ++k) lp += t.m.e[k] * fam.denom_power[k];
        max_pow = std::max(max_pow, lp);
    }
    Poly acc;
    for (const auto& t : p.terms()) {
        int lp = 0;
        Poly part(t.c);
        bool dead = false;
        for (std::size_t k = 0; k < kTableSize && !dead; ++k) {
            int e = t.m.e[k];
            if (!e) continue;
            if (k < kNumMainVars) {
                if (fam.numerator[k].is_zero()) {
                    dead = true;
                    break;
                }
                lp += e * fam.denom_power[k];
                part *= fam.numerator[k].pow(e);
            } else {
                part *= Poly::variable(k, e);
            }
        }
        if (dead) continue;
        if (max_pow > lp) part *= fam.denom.pow(max_pow - lp);
        acc += part;
    }
    return acc;
}

}  // namespace sympcert
