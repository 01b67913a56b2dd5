#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcf_family.hpp"
#include "poly.hpp"
#include "scalar.hpp"
#include "series.hpp"

namespace pdyn {

class CertificateFailure : public std::runtime_error {
public:
    explicit CertificateFailure(const std::string& what) : std::runtime_error(what) {}
};
class NotIndifferent : public std::domain_error {
public:
    explicit NotIndifferent(const std::string& what) : std::domain_error(what) {}
};
class PrecisionExhausted : public std::runtime_error {
public:
    explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
// bivariate helpers on "coefficient of z^j is a Poly in t" vectors
inline std::vector<Poly> biv_add(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    std::vector<Poly> r(std::max(a.size(), b.size()));
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = r[j] + a[j];
    for (std::size_t j = 0; j < b.size(); ++j) r[j] = r[j] + b[j];
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}
inline std::vector<Poly> biv_mul(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Poly> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}
}  // namespace detail

/// Psi(t, z) = sum A_{i,j} t^i z^j, an exact bivariate polynomial carrying the
/// coefficient bound v(A_{i,j}) + i*sigma_S + j*rho_R >= rho_R (strict at
/// (0,0)), verified at construction.
struct BivariateSeries {
    BigInt p;
    Rat sigma_S = 0;  // exponent of the parameter disk radius S
    Rat rho_R = 0;    // exponent of the phase disk radius R
    std::vector<Poly> zc;  // coefficient of z^j is a Poly in t

    BivariateSeries(BigInt p_, std::vector<Poly> z_coeffs, Rat sigma_S_ = 0, Rat rho_R_ = 0)
        : p(std::move(p_)), sigma_S(std::move(sigma_S_)), rho_R(std::move(rho_R_)),
          zc(std::move(z_coeffs)) {
        while (!zc.empty() && zc.back().is_zero()) zc.pop_back();
        for (std::size_t j = 0; j < zc.size(); ++j) {
            for (long i = 0; i <= std::max<long>(zc[j].degree(), 0); ++i) {
                const Rat& a = zc[j][static_cast<std::size_t>(i)];
                if (a == 0) continue;
                Rat bound = Rat(*valuation(a, p)) + Rat(i) * sigma_S + Rat(j) * rho_R;
                bool ok = (i == 0 && j == 0) ? bound > rho_R : bound >= rho_R;
                if (!ok)
                    throw CertificateFailure("BivariateSeries: coefficient bound fails at (" +
                                             std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    Rat A(std::size_t i, std::size_t j) const {
        if (j >= zc.size()) return 0;
        return zc[j][i];
    }
    std::size_t z_degree() const { return zc.empty() ? 0 : zc.size() - 1; }

    /// Specialize the parameter: Psi_t as a Poly in z.
    Poly at_t(const Rat& t) const {
        std::vector<Poly> dummy;
        std::vector<Rat> c;
        c.reserve(zc.size());
        for (const auto& q : zc) c.push_back(q.eval(t));
        return Poly(std::move(c));
    }

    /// z-composition Psi(t, Psi(t, z)), iterated e-1 times (the e-replacement
    /// of Case 2 Step 1, equivalent to N <- e(N-M)+M for built families).
    BivariateSeries self_compose(std::size_t e) const {
        if (e < 1) throw std::invalid_argument("self_compose: e >= 1");
        std::vector<Poly> cur = zc;
        for (std::size_t k = 1; k < e; ++k) {
            std::vector<Poly> acc;  // Psi(t, cur)
            for (std::size_t j = zc.size(); j-- > 0;) {
                acc = detail::biv_mul(acc, cur);
                acc = detail::biv_add(acc, {zc[j]});
            }
            cur = std::move(acc);
        }
        return BivariateSeries(p, std::move(cur), sigma_S, rho_R);
    }
};

/// Psi(t,z) = f_c^{N-M}(z + f_c^M(0)) - f_c^M(0) with c = a + t, as an exact
/// bivariate polynomial over the unit bidisk (S = R = 1).
inline BivariateSeries build_psi(const UnicriticalFamily& fam, std::size_t M, std::size_t N) {
    if (N <= M) throw std::invalid_argument("build_psi: N > M required");
    Rat a = fam.a.value_or(Rat(0));
    Poly q = critical_orbit_poly(fam.d, M).shift(a);  // f_{a+t}^M(0) as a Poly in t
    Poly c_of_t({a, Rat(1)});                         // c = a + t
    std::vector<Poly> x{q, Poly::constant(1)};        // z + q(t)
    for (std::size_t k = 0; k < N - M; ++k) {
        std::vector<Poly> pw{Poly::constant(1)};
        for (long i = 0; i < fam.d; ++i) pw = detail::biv_mul(pw, x);
        pw[0] = pw[0] + c_of_t;
        x = std::move(pw);
    }
    x[0] = x[0] - q;
    while (!x.empty() && x.back().is_zero()) x.pop_back();
    return BivariateSeries(fam.p, std::move(x));
}

struct CaseTag {
    bool attracting = false;
    long e = 0;  // Indifferent: multiplicative order of the residue of A_{0,1}

    std::string str() const {
        return attracting ? "Attracting" : "Indifferent(e=" + std::to_string(e) + ")";
    }
};

inline CaseTag classify_case(const BivariateSeries& psi) {
    Rat a01 = psi.A(0, 1);
    auto v = valuation(a01, psi.p);
    if (!v || *v > 0) return {true, 0};
    if (*v < 0) throw CertificateFailure("classify_case: |A_{0,1}| > 1");
    BigInt r = padic_residue(a01, psi.p, 1);
    BigInt acc = r;
    long e = 1;
    while (acc != 1) {
        acc = acc * r % psi.p;
        ++e;
    }
    return {false, e};
}

/// Exponent of t_s = max{ s/S, |A_{0,0}|/R, |A_{0,1}| } (eq. tcr).
inline Rat t_s(const BivariateSeries& psi, const Rat& sigma_s) {
    if (!classify_case(psi).attracting) throw NotAttracting("t_s: indifferent case");
    if (sigma_s <= psi.sigma_S) throw std::invalid_argument("t_s: need s < S");
    Rat ex = sigma_s - psi.sigma_S;
    if (auto v = valuation(psi.A(0, 0), psi.p)) ex = std::min(ex, Rat(*v) - psi.rho_R);
    if (auto v = valuation(psi.A(0, 1), psi.p)) ex = std::min(ex, Rat(*v));
    return ex;
}

namespace detail {
// evaluate the z-coefficients at t and reduce mod p^K; requires integrality
inline std::vector<BigInt> residue_coeffs(const BivariateSeries& psi, const Rat& t,
                                          unsigned long K) {
    BigInt m = pow_int(psi.p, K);
    std::vector<BigInt> b;
    b.reserve(psi.zc.size());
    for (const auto& q : psi.zc) {
        Rat val = q.eval(t);
        auto v = valuation(val, psi.p);
        if (v && *v < 0)
            throw CertificateFailure("non-integral specialized coefficient");
        b.push_back(padic_residue(val, psi.p, K));
        (void)m;
    }
    return b;
}
inline BigInt eval_mod(const std::vector<BigInt>& b, const BigInt& g, const BigInt& m) {
    BigInt r = 0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) r = (r * g + *it) % m;
    return r;
}
}  // namespace detail

/// Fixed point beta of Psi_t in the attracting case, to residual <= p^{-P}.
/// Geometric contraction by t_s bounds the iteration count a priori.
inline CappedPadic attracting_fixed_point(const BivariateSeries& psi, const Rat& t,
                                          unsigned long P, std::optional<Rat> sigma_s = {}) {
    Rat ss = sigma_s.value_or(psi.sigma_S + 1);
    if (auto vt = valuation(t, psi.p); vt && Rat(*vt) < ss)
        throw std::invalid_argument("attracting_fixed_point: v(t) < sigma_s");
    Rat ts_exp = t_s(psi, ss);  // throws NotAttracting in the indifferent case
    if (ts_exp <= 0) throw NotAttracting("attracting_fixed_point: t_s >= 1");
    unsigned long K = P + 2;
    BigInt m = pow_int(psi.p, K);
    BigInt mp = pow_int(psi.p, P);
    auto b = detail::residue_coeffs(psi, t, K);
    // iteration bound ceil(P / ts_exp) + 2
    Rat steps = Rat(P) / ts_exp;
    unsigned long max_iter =
        static_cast<unsigned long>(numerator(steps) / denominator(steps)) + 3;
    BigInt g = 0;
    for (unsigned long it = 0; it < max_iter; ++it) {
        BigInt next = detail::eval_mod(b, g, m);
        if ((next - g) % mp == 0) {
            g = next;
            break;
        }
        g = next;
    }
    BigInt residual = mod_positive(detail::eval_mod(b, g, m) - g, m);
    if (residual % mp != 0)
        throw PrecisionExhausted("attracting_fixed_point: residual above target");
    return CappedPadic::from_rational(Rat(mod_positive(g, mp)), psi.p, P);
}

/// Deterministic Case 2 Step 1 bookkeeping: midpoint choices for s-tilde and
/// r, half-slack for t.
struct RadiusBookkeeping {
    Rat sigma_s;       // caller's s
    Rat sigma_stilde;  // midpoint of (sigma_s, sigma_S)
    Rat rho_r;         // midpoint of the allowed interval for r
    Rat t_exp;         // half the minimal slack
};

inline RadiusBookkeeping case2_bookkeeping(const BivariateSeries& psi, const Rat& sigma_s) {
    if (sigma_s <= psi.sigma_S)
        throw std::invalid_argument("case2_bookkeeping: need s < S");
    RadiusBookkeeping bk;
    bk.sigma_s = sigma_s;
    bk.sigma_stilde = (sigma_s + psi.sigma_S) / 2;
    // max{|A00|, R*stilde/S} < r < R
    Rat upper = Rat(psi.rho_R + bk.sigma_stilde - psi.sigma_S);
    if (auto v = valuation(psi.A(0, 0), psi.p)) upper = std::min(upper, Rat(*v));
    bk.rho_r = (psi.rho_R + upper) / 2;
    // max{|A00|/r, |A01 - 1|, r/R, R*stilde/(r*S)} < t < 1
    Rat slack = Rat(bk.rho_r - psi.rho_R);
    if (auto v = valuation(psi.A(0, 0), psi.p)) slack = std::min(slack, Rat(Rat(*v) - bk.rho_r));
    if (auto v = valuation(Rat(psi.A(0, 1) - 1), psi.p)) slack = std::min(slack, Rat(*v));
    slack = std::min(slack, Rat(psi.rho_R + bk.sigma_stilde - psi.sigma_S - bk.rho_r));
    if (slack <= 0)
        throw NotIndifferent("case2_bookkeeping: no admissible t (is |A01 - 1| < 1?)");
    bk.t_exp = slack / 2;
    return bk;
}

/// Exponent of C_n = max_{k>=1} |k|^{-1} (t |p|^{-1/(p^n(p-1))})^k, i.e. the
/// minimum over k of k*tau - v_p(k) with tau = t_exp - 1/(p^n(p-1)).
/// nullopt when tau <= 0 (C_n unbounded at this n).
inline std::optional<Rat> iterlog_error_bound(const Rat& t_exp, const BigInt& p,
                                              unsigned long n) {
    if (t_exp <= 0) throw std::invalid_argument("iterlog_error_bound: t_exp > 0 required");
    Rat tau = t_exp - Rat(1, (p - 1) * pow_int(p, n));
    if (tau <= 0) return std::nullopt;
    // the minimum over all k>=1 is attained at k = p^m: v_p(k) maximal per size
    Rat best = tau;  // m = 0
    BigInt pm = 1;
    for (unsigned long m = 1;; ++m) {
        pm *= p;
        Rat term = Rat(pm) * tau - Rat(m);
        best = std::min(best, term);
        // increments (p-1)p^m*tau - 1 grow; once positive the sequence rises
        if (Rat(pm) * (p - 1) * tau > 1) break;
    }
    return best;
}

struct IterLogResult {
    CappedPadic approximation;   // p^{-n}(Psi_t^{p^n}(z) - z) mod p^P
    std::optional<Rat> error_exponent;  // exponent of C_n r |p|^n; nullopt = no bound yet
    unsigned long n = 0;
};

/// Lambda_n = p^{-n}(Psi_t^{p^n}(z) - z), computed modulo p^{n+P}, with the
/// certified error exponent C_n-exponent + rho_r + n.
inline IterLogResult iterative_log(const BivariateSeries& psi, const Rat& t, const Rat& z,
                                   unsigned long n, const RadiusBookkeeping& bk,
                                   unsigned long P) {
    CaseTag tag = classify_case(psi);
    if (tag.attracting) throw NotIndifferent("iterative_log: attracting case");
    if (tag.e != 1) throw NotIndifferent("iterative_log: apply the e-replacement first");
    if (auto vz = valuation(z, psi.p); vz && (Rat(*vz) < bk.rho_r || *vz < 0))
        throw std::invalid_argument("iterative_log: z outside the certified disk");
    unsigned long K = n + P;
    BigInt m = pow_int(psi.p, K);
    auto b = detail::residue_coeffs(psi, t, K);
    BigInt z0 = padic_residue(z, psi.p, K);
    BigInt g = z0;
    BigInt iters = pow_int(psi.p, n);
    for (BigInt k = 0; k < iters; ++k) g = detail::eval_mod(b, g, m);
    BigInt diff = mod_positive(g - z0, m);
    IterLogResult res;
    res.n = n;
    if (auto c = iterlog_error_bound(bk.t_exp, psi.p, n))
        res.error_exponent = *c + bk.rho_r + Rat(n);
    if (diff == 0) {
        res.approximation = CappedPadic::zero(psi.p, P);
    } else {
        res.approximation =
            CappedPadic::from_rational(Rat(diff, pow_int(psi.p, n)), psi.p, P);
    }
    return res;
}

struct PreperiodicVerdict {
    enum class Kind { NonzeroCertified, PossiblyZero } kind = Kind::PossiblyZero;
    std::optional<CappedPadic> approximation;  // NonzeroCertified
    std::optional<Rat> approximation_valuation;
    std::optional<Rat> error_exponent;  // NonzeroCertified
    Rat precision_exponent = 0;         // PossiblyZero: precision reached
    unsigned long n_used = 0;
    bool exact_repetition = false;  // attracting fallback found a finite orbit
};

/// Escalate the iterative logarithm at the marked point z = 0 per the
/// schedule; certify Lambda != 0 as soon as the approximation beats the
/// error bound. Indifferent case only.
inline PreperiodicVerdict preperiodic_verdict(const BivariateSeries& psi_in, const Rat& t,
                                              const std::vector<unsigned long>& schedule,
                                              const Rat& sigma_s = 1, unsigned long P = 12) {
    CaseTag tag = classify_case(psi_in);
    if (tag.attracting) throw NotIndifferent("preperiodic_verdict: attracting case");
    BivariateSeries psi =
        tag.e == 1 ? psi_in : psi_in.self_compose(static_cast<std::size_t>(tag.e));
    RadiusBookkeeping bk = case2_bookkeeping(psi, sigma_s);
    PreperiodicVerdict out;
    for (unsigned long n : schedule) {
        IterLogResult res = iterative_log(psi, t, Rat(0), n, bk, P);
        out.n_used = n;
        out.precision_exponent = Rat(P);
        if (!res.approximation.is_zero && res.error_exponent &&
            Rat(res.approximation.valuation) < *res.error_exponent) {
            out.kind = PreperiodicVerdict::Kind::NonzeroCertified;
            out.approximation = res.approximation;
            out.approximation_valuation = Rat(res.approximation.valuation);
            out.error_exponent = res.error_exponent;
            return out;
        }
    }
    out.kind = PreperiodicVerdict::Kind::PossiblyZero;
    return out;
}

// ---------------------------------------------------------------------------
// Whole-parameter verdict pipeline.
// ---------------------------------------------------------------------------

struct VerdictReport {
    enum class Outcome { Escape, PossiblyZero, NonzeroCertified } outcome;
    Rat c;
    std::optional<EscapeCertificate> escape;
    std::optional<CaseTag> case_tag;
    std::size_t M = 0, N = 0;
    std::optional<CappedPadic> beta;  // attracting fixed point
    std::optional<PreperiodicVerdict> verdict;
    bool exact_repetition = false;

    std::string outcome_str() const {
        switch (outcome) {
            case Outcome::Escape: return "Escape";
            case Outcome::PossiblyZero: return "PossiblyZero";
            case Outcome::NonzeroCertified: return "NonzeroCertified";
        }
        return "?";
    }
};

/// Full certificate chain for one parameter of z^d + c: escape test, residue
/// stability, Psi construction, attracting/indifferent dispatch.
inline VerdictReport parameter_verdict(long d, const BigInt& p, const Rat& c,
                                       const std::vector<unsigned long>& schedule = {1, 2, 3,
                                                                                     4, 5, 6},
                                       unsigned long P = 12) {
    VerdictReport rep;
    rep.c = c;
    if (auto esc = escape_certificate(d, p, c, 8)) {
        rep.outcome = VerdictReport::Outcome::Escape;
        rep.escape = std::move(esc);
        return rep;
    }
    UnicriticalFamily fam(d, p, c);  // recentred at the parameter itself: t = 0
    StabilityCertificate stab = stability_certificate(fam);
    rep.M = stab.chains[0].preperiod;
    rep.N = stab.chains[0].first_repeat;
    BivariateSeries psi = build_psi(fam, rep.M, rep.N);
    rep.case_tag = classify_case(psi);
    if (rep.case_tag->attracting) {
        rep.beta = attracting_fixed_point(psi, Rat(0), P);
        // exact-orbit fallback: z = 0 preperiodic iff the orbit repeats
        Poly psi0 = psi.at_t(0);
        Rat x = 0;
        std::vector<Rat> seen{x};
        rep.outcome = VerdictReport::Outcome::PossiblyZero;
        for (int k = 0; k < 32; ++k) {
            x = psi0.eval(x);
            for (const auto& s : seen)
                if (s == x) {
                    rep.exact_repetition = true;
                    return rep;
                }
            seen.push_back(x);
            if (numerator(x).str().size() > 64) break;  // heights exploding
        }
        return rep;
    }
    PreperiodicVerdict v = preperiodic_verdict(psi, Rat(0), schedule, Rat(1), P);
    rep.verdict = v;
    rep.outcome = v.kind == PreperiodicVerdict::Kind::NonzeroCertified
                      ? VerdictReport::Outcome::NonzeroCertified
                      : VerdictReport::Outcome::PossiblyZero;
    return rep;
}

}  // namespace pdyn
