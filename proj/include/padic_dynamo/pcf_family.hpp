#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "newton_polygon.hpp"
#include "poly.hpp"
#include "ratmap.hpp"
#include "scalar.hpp"

namespace pdyn {

/// The family f_c(z) = z^d + c, optionally recentered as c = a + t.
struct UnicriticalFamily {
    long d;
    BigInt p;
    std::optional<Rat> a;

    UnicriticalFamily(long d_, BigInt p_, std::optional<Rat> a_ = std::nullopt)
        : d(d_), p(std::move(p_)), a(std::move(a_)) {
        if (d < 2) throw std::invalid_argument("UnicriticalFamily: d >= 2 required");
        if (a) {
            auto v = valuation(*a, p);
            if (v && *v < 0)
                throw std::invalid_argument("UnicriticalFamily: v_p(a) >= 0 required");
        }
    }
};

/// f_c^n(0) as a polynomial in c.
inline Poly critical_orbit_poly(long d, std::size_t n) {
    Poly c = Poly::monomial(1);
    Poly x;  // f^0(0) = 0
    for (std::size_t k = 0; k < n; ++k) {
        Poly pw = Poly::constant(1);
        for (long i = 0; i < d; ++i) pw = pw * x;
        x = pw + c;
    }
    return x;
}

/// G_{m,n}(c) = f_c^n(0) - f_c^m(0); roots are parameters with the relation.
inline Poly orbit_poly(long d, std::size_t m, std::size_t n) {
    if (n <= m) throw std::invalid_argument("orbit_poly: n > m >= 0 required");
    return critical_orbit_poly(d, n) - critical_orbit_poly(d, m);
}

/// g_n(c) = f_c^n(0) + f_c^{n-1}(0) for d = 2; divides G_{n,n+1}.
inline Poly gleason_factor(std::size_t n) {
    if (n < 1) throw std::invalid_argument("gleason_factor: n >= 1 required");
    return critical_orbit_poly(2, n) + critical_orbit_poly(2, n - 1);
}

/// g_n(c) ≡ c^{2^{n-1}} (mod 2)?
inline bool gleason_mod2_check(std::size_t n) {
    Poly g = gleason_factor(n);
    BigInt expected_deg = pow_int(BigInt(2), static_cast<unsigned long>(n - 1));
    if (BigInt(g.degree()) != expected_deg) return false;
    for (long i = 0; i < g.degree(); ++i) {
        const Rat& a = g[static_cast<std::size_t>(i)];
        if (denominator(a) != 1) return false;
        if (mod_positive(numerator(a), BigInt(2)) != 0) return false;
    }
    return g.leading() == 1;
}

/// Root count of the relation polynomial in the disk about `center`.
inline std::size_t count_pcf_in_disk(const Poly& relation, const BigInt& p, const Rat& center,
                                     const LogRadius& radius) {
    return count_roots_in_disk(relation, p, center, radius);
}

struct EscapeCertificate {
    Rat c;
    std::vector<Rat> valuations;  // v(f_c^n(0)) for n = 1..k, strictly decreasing
    std::string proof_tag = "strictly decreasing valuations";
};

/// If v_p(c) < 0, the orbit of 0 escapes: v(f_c^n(0)) = d^{n-1} v_p(c).
inline std::optional<EscapeCertificate> escape_certificate(long d, const BigInt& p, const Rat& c,
                                                           std::size_t k) {
    auto v = valuation(c, p);
    if (!v || *v >= 0) return std::nullopt;
    EscapeCertificate cert;
    cert.c = c;
    Rat vn(*v);
    for (std::size_t n = 1; n <= k; ++n) {
        cert.valuations.push_back(vn);
        vn *= d;
    }
    return cert;
}

struct CriticalResidueChain {
    std::string label;  // "0" or "inf"
    std::size_t preperiod = 0;   // M
    std::size_t first_repeat = 0;  // N
    std::vector<ResiduePoint> disks;  // U_0, ..., U_{N-1} identified by centers
    bool inclusion_verified = false;  // fbar(U_j) in U_{j+1} for all j
};

struct StabilityCertificate {
    std::vector<CriticalResidueChain> chains;
};

/// Residue orbits of the critical residues 0-bar and inf-bar under the
/// reduction of z^d + a; inclusion fbar(U_j) = U_{j+1} holds by
/// reduction-compatibility, re-verified pointwise on the chain.
inline StabilityCertificate stability_certificate(const UnicriticalFamily& fam) {
    Rat a = fam.a.value_or(Rat(0));
    auto v = valuation(a, fam.p);
    if (v && *v < 0)
        throw std::invalid_argument("stability_certificate: v_p(a) >= 0 required");
    RationalMap f(Poly::monomial(static_cast<std::size_t>(fam.d)) + Poly::constant(a),
                  Poly::constant(1));
    auto red = good_reduction(f, fam.p);
    if (!red.good)
        throw std::invalid_argument("stability_certificate: no good reduction");
    StabilityCertificate cert;
    auto chain_for = [&](const ResiduePoint& start, const std::string& label) {
        OrbitReport rep = residue_orbit(*red.map, start);
        CriticalResidueChain ch;
        ch.label = label;
        ch.preperiod = rep.preperiod;
        ch.first_repeat = rep.first_repeat;
        ch.disks = rep.orbit;
        ch.inclusion_verified = true;
        for (std::size_t j = 0; j + 1 < ch.disks.size(); ++j)
            if (!(red.map->evaluate(ch.disks[j]) == ch.disks[j + 1]))
                ch.inclusion_verified = false;
        // the closing step U_{N-1} -> U_M
        if (!ch.disks.empty() &&
            !(red.map->evaluate(ch.disks.back()) == ch.disks[ch.preperiod]))
            ch.inclusion_verified = false;
        return ch;
    };
    cert.chains.push_back(chain_for(ResiduePoint{false, FiniteField(fam.p).zero()}, "0"));
    cert.chains.push_back(chain_for(ResiduePoint::infinity(), "inf"));
    return cert;
}

struct OrbitRelation {
    std::string marked;  // "0" or "inf"
    std::size_t m = 0, n = 0;  // f^n = f^m, n > m
};

struct HeightTrend {
    std::vector<std::size_t> digit_sizes;  // decimal digits of numerator height per step
};

struct OrbitRelationEvidence {
    enum class Kind { Relations, Escape, Inconclusive } kind;
    std::vector<OrbitRelation> relations;       // Kind::Relations
    std::optional<EscapeCertificate> escape;    // Kind::Escape
    HeightTrend trend;                          // Kind::Inconclusive
};

/// Exact orbit of 0 under z^d + c up to `budget` steps; returns minimal
/// relations, or escape evidence, or the observed height growth.
inline OrbitRelationEvidence detect_orbit_relations(long d, const BigInt& p, const Rat& c,
                                                    std::size_t budget,
                                                    std::size_t height_digit_bound = 64) {
    OrbitRelationEvidence ev{OrbitRelationEvidence::Kind::Inconclusive, {}, std::nullopt, {}};
    if (auto esc = escape_certificate(d, p, c, std::min<std::size_t>(budget, 8))) {
        ev.kind = OrbitRelationEvidence::Kind::Escape;
        ev.escape = std::move(esc);
        return ev;
    }
    std::vector<Rat> orbit{Rat(0)};
    Rat x = 0;
    for (std::size_t n = 1; n <= budget; ++n) {
        Rat pw = 1;
        for (long i = 0; i < d; ++i) pw *= x;
        x = pw + c;
        for (std::size_t m = 0; m < orbit.size(); ++m) {
            if (orbit[m] == x) {
                ev.kind = OrbitRelationEvidence::Kind::Relations;
                ev.relations.push_back({"0", m, n});
                ev.relations.push_back({"inf", 0, 1});  // infinity is always fixed
                return ev;
            }
        }
        orbit.push_back(x);
        std::size_t digits = numerator(x).str().size();
        ev.trend.digit_sizes.push_back(digits);
        if (digits > height_digit_bound) break;  // heights exploding: report the trend
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Example pipelines: h_n(b) and the ideal-membership check.
// ---------------------------------------------------------------------------

/// h_n(b) = F_b^{3^n}(-b) + b with F_b(w) = w^2 - 2w + (b+3); n <= 2 only.
inline Poly ex72_h_poly(std::size_t n) {
    if (n < 1) throw std::invalid_argument("ex72_h_poly: n >= 1 required");
    if (n > 2) throw BudgetExceeded("ex72_h_poly: n >= 3 is out of desk scale");
    std::size_t iters = 1;
    for (std::size_t i = 0; i < n; ++i) iters *= 3;
    Poly b = Poly::monomial(1);
    Poly w = -b;
    for (std::size_t k = 0; k < iters; ++k)
        w = w * w - w * Rat(2) + b + Poly::constant(3);
    return w + b;
}

/// Order of vanishing at b = 0 of the mod-3 reduction; degree+1 when the
/// reduction is 0.
inline std::size_t ex72_mod3_order(const Poly& h) {
    for (std::size_t i = 0; i <= static_cast<std::size_t>(h.degree()); ++i) {
        const Rat& a = h[i];
        if (denominator(a) != 1) throw std::invalid_argument("ex72_mod3_order: non-integer");
        if (mod_positive(numerator(a), BigInt(3)) != 0) return i;
    }
    return static_cast<std::size_t>(h.degree()) + 1;
}

/// Integer bivariate polynomial in (b, w): coefficient of w^j is a Poly in b.
struct BiPoly {
    std::vector<Poly> wc;

    static BiPoly zero() { return {}; }
    static BiPoly w_monomial(std::size_t j, const Poly& coeff) {
        BiPoly r;
        r.wc.assign(j + 1, Poly());
        r.wc[j] = coeff;
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        BiPoly r;
        r.wc.resize(std::max(wc.size(), o.wc.size()));
        for (std::size_t j = 0; j < r.wc.size(); ++j) {
            if (j < wc.size()) r.wc[j] = r.wc[j] + wc[j];
            if (j < o.wc.size()) r.wc[j] = r.wc[j] + o.wc[j];
        }
        r.trim();
        return r;
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (o * Rat(-1)); }
    BiPoly operator*(const Rat& s) const {
        BiPoly r = *this;
        for (auto& q : r.wc) q = q * s;
        r.trim();
        return r;
    }
    BiPoly operator*(const BiPoly& o) const {
        BiPoly r;
        if (wc.empty() || o.wc.empty()) return r;
        r.wc.assign(wc.size() + o.wc.size() - 1, Poly());
        for (std::size_t i = 0; i < wc.size(); ++i)
            for (std::size_t j = 0; j < o.wc.size(); ++j)
                r.wc[i + j] = r.wc[i + j] + wc[i] * o.wc[j];
        r.trim();
        return r;
    }
    /// Substitute g for w.
    BiPoly compose_w(const BiPoly& g) const {
        BiPoly r;
        for (auto it = wc.rbegin(); it != wc.rend(); ++it)
            r = r * g + BiPoly::w_monomial(0, *it);
        return r;
    }
    void trim() {
        while (!wc.empty() && wc.back().is_zero()) wc.pop_back();
    }
};

/// F_b(w) = w^2 - 2w + (b+3) as a bivariate polynomial.
inline BiPoly ex72_F() {
    BiPoly w = BiPoly::w_monomial(1, Poly::constant(1));
    return w * w - w * Rat(2) + BiPoly::w_monomial(0, Poly({Rat(3), Rat(1)}));
}

/// Membership of q in I_n = <3, w^{n+1}> + b<b,w>^{n-1}: a monomial b^i w^j
/// lies in I_n iff 3 | coeff, or j >= n+1, or (i >= 1 and i+j >= n).
inline bool ex72_ideal_membership(const BiPoly& q, std::size_t n) {
    for (std::size_t j = 0; j < q.wc.size(); ++j) {
        const Poly& pj = q.wc[j];
        if (pj.is_zero()) continue;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(pj.degree()); ++i) {
            const Rat& a = pj[i];
            if (a == 0) continue;
            if (denominator(a) != 1)
                throw std::invalid_argument("ex72_ideal_membership: non-integer coefficient");
            if (mod_positive(numerator(a), BigInt(3)) == 0) continue;
            if (j >= n + 1) continue;
            if (i >= 1 && i + j >= n) continue;
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Example 7.3 report.
// ---------------------------------------------------------------------------

struct Ex73Report {
    BigInt p;
    bool identity_f1_zero = false;       // f_c(1) = 0 for all c
    bool identity_f0_gamma = false;      // f_c(0) = gamma(c) for all c
    bool identity_fq_gamma = false;      // f_c((p+1)/p) = gamma(c) for all c
    // critical multiplicities as (point label, local degree)
    std::vector<std::pair<std::string, BigInt>> local_degrees;
    Rat multiplier;        // of gamma(0) as a fixed point of f_0
    Rat multiplier_valuation;
    bool repelling = false;
};

/// f_c(z) = gamma(c) * q(z), gamma(c) = c + (p+1)/p,
/// q(z) = p z^{p+1} - (p+1) z^p + 1. The c-identities reduce to exact
/// statements about q, verified symbolically.
inline Ex73Report ex73_report(const BigInt& p) {
    Ex73Report rep;
    rep.p = p;
    unsigned long pl = static_cast<unsigned long>(p);
    Poly q = Poly::monomial(pl + 1, Rat(p)) - Poly::monomial(pl, Rat(p + 1)) +
             Poly::constant(1);
    Rat fixed = Rat(p + 1, p);  // (p+1)/p; gamma(0) is this same value
    rep.identity_f1_zero = q.eval(1) == 0;
    rep.identity_f0_gamma = q.eval(0) == 1;   // f_c(0) = gamma(c) * 1
    rep.identity_fq_gamma = q.eval(fixed) == 1;
    rep.local_degrees.emplace_back("inf", BigInt(p + 1));
    rep.local_degrees.emplace_back("0", BigInt(p));
    rep.local_degrees.emplace_back("1", BigInt(2));
    // f_0 = gamma(0) q(z); multiplier at the fixed point gamma(0)
    Poly f0 = q * fixed;
    if (f0.eval(fixed) != fixed) throw std::logic_error("ex73: fixed point check failed");
    rep.multiplier = f0.derivative().eval(fixed);
    auto v = valuation(rep.multiplier, p);
    rep.multiplier_valuation = Rat(*v);
    rep.repelling = *v < 0;
    return rep;
}

}  // namespace pdyn
