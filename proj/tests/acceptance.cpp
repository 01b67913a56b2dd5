// Acceptance gate: one PASS/FAIL line per criterion; nonzero exit on any FAIL.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <padic_dynamo/padic_dynamo.hpp>

using namespace pdyn;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << idx << ": " << name << "\n";
    if (!ok) ++failures;
}

bool within(Clock::time_point start, double seconds) {
    return std::chrono::duration<double>(Clock::now() - start).count() < seconds;
}

bool criterion1() {
    auto start = Clock::now();
    for (std::size_t n = 1; n <= 10; ++n)
        if (!gleason_mod2_check(n)) return false;
    return within(start, 60.0);
}

bool criterion2() {
    for (std::size_t n = 1; n <= 10; ++n) {
        Poly g = gleason_factor(n);
        std::size_t count = count_pcf_in_disk(g, 2, 0, LogRadius::open_disk(0));
        if (BigInt(count) != pow_int(BigInt(2), static_cast<unsigned long>(n - 1))) return false;
        if (count != static_cast<std::size_t>(g.degree())) return false;
    }
    return true;
}

bool criterion3() {
    Poly g2 = gleason_factor(2);
    return g2 == Poly::monomial(1) * Poly::linear_shift(2);  // c(c+2)
}

bool criterion4() {
    auto start = Clock::now();
    // The composition-lemma congruence h_n = 0 mod <3, b^{n+1}> certifies
    // mod-3 order (and positive-valuation root count) >= n+1; the exact
    // values are 2 for h_1 and 5 for h_2.
    Poly h1 = ex72_h_poly(1);
    if (h1.degree() != 8) return false;
    if (ex72_mod3_order(h1) < 2) return false;
    if (!is_squarefree(h1)) return false;
    if (count_roots_in_disk(h1, 3, 0, LogRadius::open_disk(0)) < 2) return false;
    Poly h2 = ex72_h_poly(2);
    if (h2.degree() != 512) return false;
    if (ex72_mod3_order(h2) < 4) return false;
    if (count_roots_in_disk(h2, 3, 0, LogRadius::open_disk(0)) < 4) return false;
    return within(start, 300.0);
}

bool criterion5() {
    BiPoly F = ex72_F();
    BiPoly F3 = F.compose_w(F.compose_w(F));
    return ex72_ideal_membership(F3 - BiPoly::w_monomial(1, Poly::constant(1)), 2);
}

bool criterion6() {
    for (long pl : {2L, 3L, 5L}) {
        Ex73Report r = ex73_report(BigInt(pl));
        if (!r.identity_f1_zero || !r.identity_f0_gamma || !r.identity_fq_gamma) return false;
        Rat expected(pow_int(BigInt(pl + 1), static_cast<unsigned long>(pl + 1)),
                     pow_int(BigInt(pl), static_cast<unsigned long>(pl)));
        if (r.multiplier != expected) return false;
        if (r.multiplier_valuation != Rat(-pl)) return false;
    }
    return true;
}

bool criterion7() {
    for (const Rat& l : {Rat(2), Rat(-1), Rat(3)}) {
        LattesSpec spec{LegendreCurve(l), 2, TorsionMarker::O, Mobius::identity()};
        RationalMap f = flexible_lattes(spec);
        if (f.degree() != 4) return false;
        CriticalDivisor crit = critical_points(f);
        if (crit.total() != 6) return false;
        if (crit.infinity_multiplicity > 1) return false;
        for (const auto& [pt, m] : crit.points)
            if (m != 1) return false;
        for (const auto& [q, m] : crit.algebraic_factors)
            if (m != 1) return false;
        PostcriticalReport rep = postcritical_set(f, 64);
        if (rep.strict.size() != 4) return false;
        for (const ProjPoint& x :
             {ProjPoint(Rat(0)), ProjPoint(Rat(1)), ProjPoint(l), ProjPoint::infinity()})
            if (!rep.strict.contains_point(x)) return false;
        if (!milnor_criterion(f).passes) return false;
    }
    if (milnor_criterion(RationalMap::polynomial(Poly::monomial(2))).passes) return false;
    if (milnor_criterion(RationalMap::polynomial(Poly({Rat(-1), Rat(0), Rat(1)}))).passes)
        return false;
    return true;
}

bool criterion8() {
    struct Case { long d; long p; Rat c; };
    for (const Case& cs : {Case{2, 2, Rat(1, 2)}, Case{3, 3, Rat(1, 3)}}) {
        auto cert = escape_certificate(cs.d, BigInt(cs.p), cs.c, 6);
        if (!cert) return false;
        Rat expect = Rat(*valuation(cs.c, BigInt(cs.p)));
        Rat prev;
        for (std::size_t n = 0; n < cert->valuations.size(); ++n) {
            if (cert->valuations[n] != expect) return false;
            if (n > 0 && !(cert->valuations[n] < prev)) return false;
            prev = cert->valuations[n];
            expect *= cs.d;
        }
    }
    return true;
}

bool criterion9() {
    // Psi = 4z over p=3 on the disk of radius 3 (rho_R = -1)
    BivariateSeries psi(3, {Poly(), Poly::constant(4)}, Rat(0), Rat(-1));
    RadiusBookkeeping bk = case2_bookkeeping(psi, 1);
    IterLogResult r4 = iterative_log(psi, Rat(0), Rat(1), 4, bk, 10);
    if (!r4.error_exponent) return false;
    // independent oracle: log 4 = log(1+3) = sum (-1)^{k+1} 3^k/k, truncated
    // far past the needed precision
    Rat log4 = 0;
    for (int k = 1; k <= 16; ++k) {
        Rat term(pow_int(BigInt(3), static_cast<unsigned long>(k)), k);
        log4 += (k % 2 == 1) ? term : -term;
    }
    // v(Lambda_4 - log 4) must reach the certified exponent (here >= 3)
    long need = 3;  // smallest integer >= error exponent 167/72
    if (Rat(need) < *r4.error_exponent) return false;
    BigInt m = pow_int(BigInt(3), static_cast<unsigned long>(need));
    if (mod_positive(r4.approximation.residue(static_cast<unsigned long>(need)) -
                         padic_residue(log4, 3, static_cast<unsigned long>(need)),
                     m) != 0)
        return false;
    // error bounds non-increasing in n (exponents non-decreasing; no bound =
    // unbounded)
    struct PT { long p; Rat t; };
    for (const PT& pt : {PT{2, Rat(1, 2)}, PT{3, Rat(1, 3)}}) {
        std::optional<Rat> prev;
        bool prev_set = false;
        for (unsigned long n = 1; n <= 6; ++n) {
            auto cur = iterlog_error_bound(pt.t, BigInt(pt.p), n);
            if (prev_set && prev && (!cur || *cur < *prev)) return false;
            prev = cur;
            prev_set = true;
        }
    }
    return true;
}

bool criterion10() {
    VerdictReport a = parameter_verdict(2, 3, Rat(-1));
    if (a.outcome != VerdictReport::Outcome::PossiblyZero) return false;
    VerdictReport b = parameter_verdict(2, 3, Rat(1));
    if (b.outcome != VerdictReport::Outcome::NonzeroCertified) return false;
    if (!b.verdict || b.verdict->n_used > 6) return false;
    VerdictReport c = parameter_verdict(2, 2, Rat(2));
    if (!c.case_tag || !c.case_tag->attracting) return false;
    if (!c.beta || c.beta->residue(5) != 6) return false;
    // residual <= 2^{-5}: beta is fixed mod 32
    BigInt beta = c.beta->residue(5);
    return mod_positive(beta * beta + 2 - beta, BigInt(32)) == 0;
}

bool criterion11() {
    auto start = Clock::now();
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> coef(-20, 20), unit(1, 9), exp(-3, 3), pick(0, 9),
        xv(-10, 10);
    auto rand_poly = [&](int max_deg) {
        std::uniform_int_distribution<int> deg(0, max_deg);
        std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        if (c.back() == 0) c.back() = 1;
        return Poly(std::move(c));
    };
    const BigInt primes[] = {2, 3, 5};
    // Gauss-norm multiplicativity
    for (int i = 0; i < 1000; ++i) {
        Poly f = rand_poly(4), g = rand_poly(4);
        Rat rho(coef(rng) % 5, 2);
        const BigInt& p = primes[static_cast<std::size_t>(pick(rng)) % 3];
        auto tf = TruncatedSeries::polynomial(f), tg = TruncatedSeries::polynomial(g);
        if (gauss_norm_exponent(TruncatedSeries::polynomial(f * g), p, rho) !=
            gauss_norm_exponent(tf, p, rho) + gauss_norm_exponent(tg, p, rho))
            return false;
    }
    // Newton polygon vs constructed roots
    for (int i = 0; i < 1000; ++i) {
        const BigInt& p = primes[static_cast<std::size_t>(pick(rng)) % 3];
        std::uniform_int_distribution<int> deg(1, 6);
        Poly f = Poly::constant(unit(rng));
        std::map<Rat, std::size_t> expected;
        std::size_t zeros = 0;
        int d = deg(rng);
        for (int k = 0; k < d; ++k) {
            if (pick(rng) == 0) {
                f = f * Poly::monomial(1);
                ++zeros;
                continue;
            }
            int e = exp(rng);
            Rat root = e >= 0 ? Rat(unit(rng)) * Rat(pow_int(p, static_cast<unsigned long>(e)))
                              : Rat(unit(rng)) / Rat(pow_int(p, static_cast<unsigned long>(-e)));
            f = f * Poly({-root, Rat(1)});
            expected[Rat(*valuation(root, p))] += 1;
        }
        NewtonPolygon np = newton_polygon(f, p);
        if (np.zero_order != zeros) return false;
        std::map<Rat, std::size_t> got;
        for (const auto& s : np.segments) got[Rat(-s.slope)] += s.length;
        if (got != expected) return false;
    }
    // conjugation round trip
    for (int done = 0; done < 1000;) {
        Poly num = rand_poly(3), den = rand_poly(2);
        if (num.is_zero() || den.is_zero()) continue;
        if (std::max(num.degree(), den.degree()) < 1) continue;
        if (Poly::gcd(num, den).degree() > 0) continue;
        int ma = coef(rng), mb = coef(rng), mc = coef(rng), md = coef(rng);
        if (ma * md - mb * mc == 0) continue;
        Mobius h(ma, mb, mc, md);
        RationalMap f(num, den);
        if (!(conjugate(conjugate(f, h), h.inverse()) == f)) return false;
        ++done;
    }
    // reduction-evaluation compatibility
    for (int done = 0; done < 1000;) {
        const BigInt& p = primes[1 + static_cast<std::size_t>(pick(rng)) % 2];
        Poly f = rand_poly(3);
        if (f.degree() < 2) continue;
        f = f - Poly::monomial(static_cast<std::size_t>(f.degree()), f.leading()) +
            Poly::monomial(static_cast<std::size_t>(f.degree()));
        RationalMap F = RationalMap::polynomial(f);
        auto red = good_reduction(F, p);
        if (!red.good) return false;
        for (int k = 0; k < 5; ++k, ++done) {
            Rat x(xv(rng));
            if (!(reduce_point(F.evaluate(ProjPoint(x)), p) ==
                  red.map->evaluate(reduce_point(ProjPoint(x), p))))
                return false;
        }
    }
    // residue orbit brute force, p <= 7
    const long small[] = {2, 3, 5, 7};
    for (int i = 0; i < 1000; ++i) {
        long p = small[static_cast<std::size_t>(pick(rng)) % 4];
        long c = mod_positive(BigInt(coef(rng)), BigInt(p)).convert_to<long>();
        auto red = good_reduction(RationalMap::polynomial(Poly({Rat(c), Rat(0), Rat(1)})),
                                  BigInt(p));
        if (!red.good) return false;
        FiniteField F{BigInt(p)};
        OrbitReport rep = residue_orbit(*red.map, ResiduePoint{false, F.zero()});
        std::vector<long> orbit{0};
        std::size_t pre = 0, first = 0;
        long x = 0;
        for (;;) {
            x = (x * x + c) % p;
            bool hit = false;
            for (std::size_t j = 0; j < orbit.size(); ++j)
                if (orbit[j] == x) {
                    pre = j;
                    first = orbit.size();
                    hit = true;
                    break;
                }
            if (hit) break;
            orbit.push_back(x);
        }
        if (rep.preperiod != pre || rep.first_repeat != first) return false;
    }
    return within(start, 180.0);
}

}  // namespace

int main() {
    struct Entry { int idx; const char* name; std::function<bool()> run; };
    std::vector<Entry> entries = {
        {1, "Gleason congruence mod 2, n = 1..10", criterion1},
        {2, "unit-disk containment of g_n roots", criterion2},
        {3, "g_2 roots are exactly {0, -2}", criterion3},
        {4, "h_1/h_2 degree, mod-3 order, squarefree, disk roots", criterion4},
        {5, "F_b^3(w) - w lies in I_2", criterion5},
        {6, "portrait identities and multiplier, p in {2,3,5}", criterion6},
        {7, "Lattes Milnor criterion, lambda in {2,-1,3}", criterion7},
        {8, "escape certificates (2,2,1/2) and (3,3,1/3)", criterion8},
        {9, "iterative logarithm vs p-adic log oracle", criterion9},
        {10, "verdicts for c = -1, 1 (p=3) and c = 2 (p=2)", criterion10},
        {11, "property suites, 1000 cases each", criterion11},
    };
    for (const auto& e : entries) {
        bool ok = false;
        try {
            ok = e.run();
        } catch (const std::exception& ex) {
            std::cout << "      (exception: " << ex.what() << ")\n";
            ok = false;
        }
        report(e.idx, e.name, ok);
    }
    return failures == 0 ? 0 : 1;
}
