#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"
#include "ratmap.hpp"
#include "scalar.hpp"

namespace pdyn {

class UnsupportedM : public std::domain_error {
public:
    explicit UnsupportedM(const std::string& what) : std::domain_error(what) {}
};

/// y^2 = x(x-1)(x-lambda), lambda != 0, 1.
struct LegendreCurve {
    Rat lambda;
    explicit LegendreCurve(Rat l) : lambda(std::move(l)) {
        if (lambda == 0 || lambda == 1)
            throw std::invalid_argument("LegendreCurve: lambda(lambda-1) = 0");
    }
    /// Right-hand side x^3 - (1+lambda)x^2 + lambda*x.
    Poly rhs() const {
        return Poly({Rat(0), lambda, -(Rat(1) + lambda), Rat(1)});
    }
};

/// x-coordinate of [m]P as a rational map in x; m in {2, 3} at desk scale.
inline RationalMap x_multiplication(long m, const LegendreCurve& curve) {
    const Rat& l = curve.lambda;
    Poly f = curve.rhs();
    if (m == 2) {
        // x([2]P) = (x^2 - lambda)^2 / (4 x (x-1) (x-lambda))
        Poly num = Poly({-l, Rat(0), Rat(1)});
        num = num * num;
        return RationalMap(num, f * Rat(4));
    }
    if (m == 3) {
        // division polynomials with a2 = -(1+lambda), a4 = lambda, a6 = 0
        Rat b2 = Rat(-4) * (Rat(1) + l), b4 = Rat(2) * l, b6 = 0, b8 = -l * l;
        Poly psi3({b8, Rat(3) * b6, Rat(3) * b4, b2, Rat(3)});
        Poly phi({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, Rat(10) * b8, Rat(10) * b6,
                  Rat(5) * b4, b2, Rat(2)});  // psi4 / psi2
        // x([3]P) = x - psi2*psi4/psi3^2 = (x*psi3^2 - 4 f phi) / psi3^2
        Poly den = psi3 * psi3;
        Poly num = Poly::monomial(1) * den - f * phi * Rat(4);
        return RationalMap(num, den);
    }
    throw UnsupportedM("x_multiplication: m in {2,3} only");
}

enum class TorsionMarker { O, T0, T1, TLambda };

/// The Mobius map x(P) -> x(P + T) for a 2-torsion point T.
inline Mobius torsion_translation(TorsionMarker t, const LegendreCurve& curve) {
    const Rat& l = curve.lambda;
    switch (t) {
        case TorsionMarker::O: return Mobius::identity();
        case TorsionMarker::T0: return Mobius(Rat(0), l, Rat(1), Rat(0));       // lambda/x
        case TorsionMarker::T1: return Mobius(Rat(1), -l, Rat(1), Rat(-1));     // (x-l)/(x-1)
        case TorsionMarker::TLambda: return Mobius(l, -l, Rat(1), -l);          // l(x-1)/(x-l)
    }
    throw std::logic_error("torsion_translation: bad marker");
}

struct LattesSpec {
    LegendreCurve curve;
    long m = 2;
    TorsionMarker T = TorsionMarker::O;
    Mobius h = Mobius::identity();
};

/// f = h o (tau_T o x_mult_m) o h^{-1}: the flexible Lattes map of degree m^2.
inline RationalMap flexible_lattes(const LattesSpec& spec) {
    RationalMap base = x_multiplication(spec.m, spec.curve);
    Mobius tau = torsion_translation(spec.T, spec.curve);
    Poly num = base.num() * tau.a + base.den() * tau.b;
    Poly den = base.num() * tau.c + base.den() * tau.d;
    RationalMap translated(num, den);
    return conjugate(translated, spec.h.inverse());
}

// ---------------------------------------------------------------------------
// Postcritical sets and the Milnor criterion.
// ---------------------------------------------------------------------------

/// Finite set of points of P^1(Q-bar): rational points plus monic squarefree
/// polynomials standing for their (non-rational) root sets.
struct PointSet {
    std::vector<ProjPoint> points;
    std::vector<Poly> factors;  // monic, squarefree, nonconstant

    long size() const {
        long s = static_cast<long>(points.size());
        for (const auto& f : factors) s += f.degree();
        return s;
    }
    bool contains_point(const ProjPoint& x) const {
        for (const auto& q : points)
            if (q == x) return true;
        if (!x.at_infinity)
            for (const auto& f : factors)
                if (f.eval(x.value) == 0) return true;
        return false;
    }
};

namespace detail {
/// Res_x(q(x), g(x) - y h(x)) as a polynomial in y, by exact interpolation.
inline Poly image_resultant(const Poly& q, const Poly& g, const Poly& h) {
    long d2 = std::max(g.degree(), h.degree());
    std::size_t need = static_cast<std::size_t>(q.degree()) + 1;
    std::vector<Rat> xs, ys;
    Rat sample = 0;
    while (xs.size() < need) {
        Poly r = g - h * sample;
        if (r.degree() == d2) {  // skip the single possible degree drop
            xs.push_back(sample);
            ys.push_back(resultant(q, r));
        }
        sample += 1;
    }
    // Lagrange interpolation
    Poly out;
    for (std::size_t i = 0; i < need; ++i) {
        Poly basis = Poly::constant(1);
        Rat denom = 1;
        for (std::size_t j = 0; j < need; ++j) {
            if (i == j) continue;
            basis = basis * Poly({-xs[j], Rat(1)});
            denom *= xs[i] - xs[j];
        }
        out = out + basis * (ys[i] / denom);
    }
    return out;
}

inline Poly monic_squarefree_part(const Poly& f) {
    if (f.degree() <= 0) return Poly();
    Poly g = Poly::gcd(f, f.derivative());
    Poly sf = f.divrem(g).first;
    return sf * (Rat(1) / sf.leading());
}
}  // namespace detail

/// Forward image of a point set under f, as points plus residual factors.
inline PointSet image_point_set(const RationalMap& f, const PointSet& s) {
    PointSet out;
    auto push_point = [&](const ProjPoint& x) {
        if (!out.contains_point(x)) out.points.push_back(x);
    };
    for (const auto& x : s.points) push_point(f.evaluate(x));
    for (const auto& q : s.factors) {
        if (Poly::gcd(q, f.den()).degree() > 0) push_point(ProjPoint::infinity());
        Poly r = detail::image_resultant(q, f.num(), f.den());
        Poly sf = detail::monic_squarefree_part(r);
        if (sf.is_zero() || sf.degree() <= 0) continue;
        auto [roots, rest] = rational_roots(sf);
        for (const auto& [root, mult] : roots) push_point(ProjPoint(root));
        if (rest.degree() > 0) out.factors.push_back(rest * (Rat(1) / rest.leading()));
    }
    return out;
}

struct PostcriticalReport {
    PointSet critical;  // critical points themselves
    PointSet strict;    // union of strict forward orbits of the critical points
};

/// Orbit closure of the critical images; BudgetExceeded if it does not close.
inline PostcriticalReport postcritical_set(const RationalMap& f, std::size_t budget) {
    CriticalDivisor crit = critical_points(f);
    PostcriticalReport rep;
    for (const auto& [pt, mult] : crit.points) rep.critical.points.push_back(pt);
    if (crit.infinity_multiplicity > 0)
        rep.critical.points.push_back(ProjPoint::infinity());
    for (const auto& [q, mult] : crit.algebraic_factors)
        rep.critical.factors.push_back(q * (Rat(1) / q.leading()));
    PointSet frontier = image_point_set(f, rep.critical);
    std::size_t steps = 0;
    while (frontier.size() > 0) {
        if (++steps > budget) throw BudgetExceeded("postcritical_set: orbit did not close");
        PointSet fresh;
        for (const auto& x : frontier.points)
            if (!rep.strict.contains_point(x)) {
                rep.strict.points.push_back(x);
                fresh.points.push_back(x);
            }
        for (Poly q : frontier.factors) {
            for (const auto& known : rep.strict.factors) {
                Poly g = Poly::gcd(q, known);
                if (g.degree() > 0) q = q.divrem(g).first;
            }
            if (q.degree() > 0) {
                Poly mq = q * (Rat(1) / q.leading());
                rep.strict.factors.push_back(mq);
                fresh.factors.push_back(mq);
            }
        }
        if (fresh.size() == 0) break;
        frontier = image_point_set(f, fresh);
    }
    return rep;
}

struct MilnorVerdict {
    bool passes = false;
    long strictly_postcritical_count = 0;
    bool all_critical_simple = false;
    bool none_strictly_postcritical_critical = false;
};

/// Milnor's flexible-Lattes criterion: exactly four strictly postcritical
/// points, all critical points simple, and no strictly postcritical point
/// critical.
inline MilnorVerdict milnor_criterion(const RationalMap& f, std::size_t budget = 64) {
    CriticalDivisor crit = critical_points(f);
    MilnorVerdict v;
    v.all_critical_simple = crit.infinity_multiplicity <= 1;
    for (const auto& [pt, m] : crit.points)
        if (m != 1) v.all_critical_simple = false;
    for (const auto& [q, m] : crit.algebraic_factors)
        if (m != 1) v.all_critical_simple = false;
    PostcriticalReport rep = postcritical_set(f, budget);
    v.strictly_postcritical_count = rep.strict.size();
    Poly w = f.wronskian();
    v.none_strictly_postcritical_critical = true;
    for (const auto& x : rep.strict.points) {
        bool is_crit = x.at_infinity ? crit.infinity_multiplicity > 0
                                     : w.eval(x.value) == 0;
        if (is_crit) v.none_strictly_postcritical_critical = false;
    }
    for (const auto& q : rep.strict.factors)
        if (Poly::gcd(q, w).degree() > 0) v.none_strictly_postcritical_critical = false;
    v.passes = v.strictly_postcritical_count == 4 && v.all_critical_simple &&
               v.none_strictly_postcritical_critical;
    return v;
}

}  // namespace pdyn
