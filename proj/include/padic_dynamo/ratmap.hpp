#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "finite_field.hpp"
#include "newton_polygon.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace pdyn {

class NotFixed : public std::domain_error {
public:
    explicit NotFixed(const std::string& what) : std::domain_error(what) {}
};
class DegenerateQuadruple : public std::domain_error {
public:
    explicit DegenerateQuadruple(const std::string& what) : std::domain_error(what) {}
};

/// Point of P^1(Q): a finite rational value or the point at infinity.
struct ProjPoint {
    bool at_infinity = false;
    Rat value = 0;

    ProjPoint() = default;
    ProjPoint(const Rat& v) : value(v) {}  // NOLINT: implicit by design
    static ProjPoint infinity() {
        ProjPoint pt;
        pt.at_infinity = true;
        return pt;
    }
    bool operator==(const ProjPoint& o) const {
        if (at_infinity || o.at_infinity) return at_infinity == o.at_infinity;
        return value == o.value;
    }
    bool operator<(const ProjPoint& o) const {  // for ordered containers
        if (at_infinity != o.at_infinity) return !at_infinity;
        return value < o.value;
    }
    std::string str() const { return at_infinity ? "inf" : value.str(); }
};

/// Linear fractional transformation z -> (a z + b) / (c z + d), ad-bc != 0.
struct Mobius {
    Rat a = 1, b = 0, c = 0, d = 1;

    Mobius() = default;
    Mobius(Rat a_, Rat b_, Rat c_, Rat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c == 0) throw std::invalid_argument("Mobius: singular matrix");
    }
    static Mobius identity() { return {}; }
    static Mobius translation(const Rat& t) { return {1, t, 0, 1}; }
    static Mobius scaling(const Rat& s) { return {s, 0, 0, 1}; }
    static Mobius inversion() { return {0, 1, 1, 0}; }

    Mobius inverse() const { return {d, -b, -c, a}; }
    Mobius compose(const Mobius& o) const {  // this after o
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    ProjPoint apply(const ProjPoint& x) const {
        if (x.at_infinity) {
            if (c == 0) return ProjPoint::infinity();
            return ProjPoint(a / c);
        }
        Rat den = c * x.value + d;
        if (den == 0) return ProjPoint::infinity();
        return ProjPoint((a * x.value + b) / den);
    }
};

/// Rational map f = g/h with g, h coprime over Q; degree max(deg g, deg h).
class RationalMap {
public:
    RationalMap(Poly num, Poly den) : g_(std::move(num)), h_(std::move(den)) { normalize(); }
    static RationalMap polynomial(Poly f) { return RationalMap(std::move(f), Poly::constant(1)); }

    const Poly& num() const { return g_; }
    const Poly& den() const { return h_; }
    long degree() const { return std::max(g_.degree(), h_.degree()); }

    ProjPoint evaluate(const ProjPoint& x) const {
        if (x.at_infinity) {
            if (g_.degree() > h_.degree()) return ProjPoint::infinity();
            if (g_.degree() < h_.degree()) return ProjPoint(Rat(0));
            return ProjPoint(g_.leading() / h_.leading());
        }
        Rat gn = g_.eval(x.value), hn = h_.eval(x.value);
        if (hn == 0) return ProjPoint::infinity();  // coprimality: gn != 0
        return ProjPoint(gn / hn);
    }

    ProjPoint iterate(ProjPoint x, std::size_t n) const {
        for (std::size_t i = 0; i < n; ++i) x = evaluate(x);
        return x;
    }

    /// Wronskian g'h - gh'; its roots are the finite critical points.
    Poly wronskian() const { return g_.derivative() * h_ - g_ * h_.derivative(); }

    bool operator==(const RationalMap& o) const {
        // equality up to the common scaling removed by normalize()
        return g_ == o.g_ && h_ == o.h_;
    }

private:
    void normalize() {
        if (g_.is_zero() && h_.is_zero())
            throw std::invalid_argument("RationalMap: 0/0");
        Poly common = Poly::gcd(g_.is_zero() ? h_ : g_, g_.is_zero() ? g_ : h_);
        if (common.degree() > 0) {
            g_ = g_.divrem(common).first;
            h_ = h_.divrem(common).first;
        }
        if (h_.is_zero()) throw std::invalid_argument("RationalMap: zero denominator");
        if (std::max(g_.degree(), h_.degree()) < 1)
            throw std::invalid_argument("RationalMap: degree must be >= 1");
        // canonical scaling: denominator monic-ish via leading of the higher part
        Rat s = h_.is_zero() ? Rat(1) : Rat(1) / h_.leading();
        g_ = g_ * s;
        h_ = h_ * s;
    }
    Poly g_, h_;
};

/// Critical locus: rational points plus residual polynomial factors whose
/// roots are critical points algebraic over Q; multiplicities from the
/// Wronskian, plus the bookkeeping multiplicity at infinity.
struct CriticalDivisor {
    std::vector<std::pair<ProjPoint, int>> points;       // rational critical points
    std::vector<std::pair<Poly, int>> algebraic_factors; // squarefree factors, multiplicity
    int infinity_multiplicity = 0;

    long total() const {
        long t = infinity_multiplicity;
        for (const auto& [pt, m] : points) t += m;
        for (const auto& [f, m] : algebraic_factors) t += static_cast<long>(f.degree()) * m;
        return t;
    }
};

inline CriticalDivisor critical_points(const RationalMap& f) {
    if (f.degree() < 2) throw std::invalid_argument("critical_points: degree >= 2 required");
    CriticalDivisor div;
    Poly w = f.wronskian();
    long dw = w.is_zero() ? 0 : w.degree();
    div.infinity_multiplicity = static_cast<int>(2 * f.degree() - 2 - dw);
    for (const auto& [sqf, mult] : squarefree_decomposition(w)) {
        auto [roots, rest] = rational_roots(sqf);
        for (const auto& [r, m] : roots) div.points.emplace_back(ProjPoint(r), mult * m);
        if (rest.degree() > 0) div.algebraic_factors.emplace_back(rest, mult);
    }
    return div;
}

/// Derivative of f at a fixed point, chart-corrected at infinity.
inline Rat multiplier(const RationalMap& f, const ProjPoint& fixed) {
    if (!(f.evaluate(fixed) == fixed)) throw NotFixed("multiplier: point not fixed");
    if (fixed.at_infinity) {
        // conjugate by z -> 1/z and read the multiplier at 0
        Poly rg, rh;  // reversed coefficient polynomials
        {
            std::size_t n = static_cast<std::size_t>(f.degree());
            std::vector<Rat> a(n + 1, Rat(0)), b(n + 1, Rat(0));
            for (std::size_t i = 0; i <= static_cast<std::size_t>(f.num().degree()); ++i)
                a[n - i] = f.num()[i];
            for (std::size_t i = 0; i <= static_cast<std::size_t>(f.den().degree()); ++i)
                b[n - i] = f.den()[i];
            rg = Poly(std::move(b));  // 1/f(1/w) = rev(h)/rev(g)
            rh = Poly(std::move(a));
        }
        RationalMap conj(rg, rh);
        return multiplier(conj, ProjPoint(Rat(0)));
    }
    const Rat& x = fixed.value;
    Rat hv = f.den().eval(x);
    if (hv == 0) throw NotFixed("multiplier: pole is not a finite fixed point");
    Poly w = f.wronskian();
    return w.eval(x) / (hv * hv);
}

/// h^{-1} o f o h.
inline RationalMap conjugate(const RationalMap& f, const Mobius& m) {
    // substitute z <- (az+b)/(cz+d) homogeneously at common height = degree
    std::size_t n = static_cast<std::size_t>(f.degree());
    Poly az_b({m.b, m.a});
    Poly cz_d({m.d, m.c});
    auto subst = [&](const Poly& q) {
        Poly acc;
        Poly pw = Poly::constant(1);
        std::vector<Poly> low(n + 1);  // (cz+d)^(n-i)
        low[0] = Poly::constant(1);
        for (std::size_t i = 1; i <= n; ++i) low[i] = low[i - 1] * cz_d;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(std::max<long>(q.degree(), 0));
             ++i) {
            if (q[i] != 0) acc = acc + pw * low[n - i] * q[i];
            pw = pw * az_b;
        }
        return acc;
    };
    Poly num_fh = subst(f.num());
    Poly den_fh = subst(f.den());
    // now apply m^{-1} = (d z - b) / (-c z + a) to the pair (num, den)
    Poly out_num = num_fh * m.d - den_fh * m.b;
    Poly out_den = num_fh * (-m.c) + den_fh * m.a;
    return RationalMap(out_num, out_den);
}

/// Cross ratio (b1-b2)(b3-b4) / ((b1-b4)(b3-b2)), projectively extended.
inline Rat cross_ratio_lambda(const ProjPoint& b1, const ProjPoint& b2, const ProjPoint& b3,
                              const ProjPoint& b4) {
    const ProjPoint pts[4] = {b1, b2, b3, b4};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (pts[i] == pts[j]) throw DegenerateQuadruple("cross_ratio: coincident points");
    // homogeneous coordinates (x : y)
    auto X = [](const ProjPoint& pt) { return pt.at_infinity ? Rat(1) : pt.value; };
    auto Y = [](const ProjPoint& pt) { return pt.at_infinity ? Rat(0) : Rat(1); };
    auto D = [&](const ProjPoint& u, const ProjPoint& v) { return X(u) * Y(v) - X(v) * Y(u); };
    Rat num = D(b1, b2) * D(b3, b4);
    Rat den = D(b1, b4) * D(b3, b2);
    return num / den;  // distinct points keep the ratio off {0, infinity}
}

// ---------------------------------------------------------------------------
// Reduction modulo p and residue orbits.
// ---------------------------------------------------------------------------

/// Point of P^1 over the residue field.
struct ResiduePoint {
    bool at_infinity = false;
    FFElem value;

    static ResiduePoint infinity() {
        ResiduePoint r;
        r.at_infinity = true;
        return r;
    }
    bool operator==(const ResiduePoint& o) const {
        return at_infinity == o.at_infinity && value == o.value;
    }
    bool operator<(const ResiduePoint& o) const {
        if (at_infinity != o.at_infinity) return !at_infinity;
        return value < o.value;
    }
};

struct ReducedMap {
    FiniteField field;
    FFPoly num, den;
    long degree = 0;  // degree of the reduction

    ResiduePoint evaluate(const ResiduePoint& x) const {
        const FiniteField& F = field;
        if (x.at_infinity) {
            if (num.degree() > den.degree()) return ResiduePoint::infinity();
            if (num.degree() < den.degree()) return ResiduePoint{false, F.zero()};
            return ResiduePoint{false, F.mul(num.c.back(), F.inv(den.c.back()))};
        }
        FFElem gv = num.eval(F, x.value), hv = den.eval(F, x.value);
        if (F.is_zero(hv)) return ResiduePoint::infinity();
        return ResiduePoint{false, F.mul(gv, F.inv(hv))};
    }
};

struct ReductionResult {
    bool good = false;
    std::optional<ReducedMap> map;  // present iff good
};

/// Normalize so all coefficients are p-integral with some unit coefficient,
/// reduce mod p, clear common factors, and test for degree preservation.
inline ReductionResult good_reduction(const RationalMap& f, const BigInt& p) {
    // minimal valuation over all coefficients (ties break at lowest index,
    // numerator first; only the p-power matters)
    std::optional<BigInt> minv;
    auto scan = [&](const Poly& q) {
        for (const auto& a : q.coeffs()) {
            auto v = valuation(a, p);
            if (v && (!minv || *v < *minv)) minv = *v;
        }
    };
    scan(f.num());
    scan(f.den());
    Rat scale = 1;
    if (minv && *minv != 0) {
        if (*minv > 0)
            scale = Rat(1, pow_int(p, static_cast<unsigned long>(*minv)));
        else
            scale = Rat(pow_int(p, static_cast<unsigned long>(-*minv)));
    }
    FiniteField F(p);
    auto reduce_poly = [&](const Poly& q) {
        FFPoly r;
        for (const auto& a : q.coeffs()) r.c.push_back(F.from_rational(a * scale));
        return FFPoly::trim(F, std::move(r));
    };
    FFPoly gbar = reduce_poly(f.num());
    FFPoly hbar = reduce_poly(f.den());
    if (gbar.is_zero() && hbar.is_zero()) return {false, std::nullopt};
    if (hbar.is_zero()) return {false, std::nullopt};  // reduces to the constant infinity
    if (!gbar.is_zero()) {
        FFPoly common = ffpoly_gcd(F, gbar, hbar);
        if (common.degree() > 0) {
            // exact division by the common factor
            auto divide = [&](FFPoly a) {
                FFPoly q;
                q.c.assign(a.c.size() - common.c.size() + 1, F.zero());
                FFElem lead_inv = F.inv(common.c.back());
                while (!a.is_zero() && a.degree() >= common.degree()) {
                    FFElem fct = F.mul(a.c.back(), lead_inv);
                    std::size_t shift = a.c.size() - common.c.size();
                    q.c[shift] = fct;
                    for (std::size_t i = 0; i < common.c.size(); ++i)
                        a.c[shift + i] = F.sub(a.c[shift + i], F.mul(fct, common.c[i]));
                    a = FFPoly::trim(F, std::move(a));
                }
                return q;
            };
            gbar = divide(std::move(gbar));
            hbar = divide(std::move(hbar));
        }
    }
    long dbar = std::max(gbar.degree(), hbar.degree());
    if (dbar != f.degree()) return {false, std::nullopt};
    ReducedMap rm{F, std::move(gbar), std::move(hbar), dbar};
    return {true, std::move(rm)};
}

/// Reduction of a projective point over Q to P^1(F_p).
inline ResiduePoint reduce_point(const ProjPoint& x, const BigInt& p) {
    FiniteField F(p);
    if (x.at_infinity) return ResiduePoint::infinity();
    auto v = valuation(x.value, p);
    if (v && *v < 0) return ResiduePoint::infinity();
    return ResiduePoint{false, F.from_rational(x.value)};
}

struct OrbitReport {
    std::size_t preperiod = 0;    // M
    std::size_t first_repeat = 0; // N, minimal with fbar^N(x) = fbar^M(x)
    std::vector<ResiduePoint> orbit;  // x, f(x), ..., f^{N-1}(x)
    std::size_t cycle_length() const { return first_repeat - preperiod; }
};

/// Finite-field orbit: minimal M < N with fbar^N(x) = fbar^M(x).
inline OrbitReport residue_orbit(const ReducedMap& fbar, const ResiduePoint& start) {
    OrbitReport rep;
    std::map<ResiduePoint, std::size_t> seen;
    ResiduePoint x = start;
    std::size_t n = 0;
    while (true) {
        auto it = seen.find(x);
        if (it != seen.end()) {
            rep.preperiod = it->second;
            rep.first_repeat = n;
            return rep;
        }
        seen[x] = n;
        rep.orbit.push_back(x);
        x = fbar.evaluate(x);
        ++n;
    }
}

}  // namespace pdyn
