#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "poly.hpp"
#include "scalar.hpp"

namespace pdyn {

/// One lower-hull segment: slope and horizontal length. A segment of slope
/// sigma and length L certifies exactly L roots (with multiplicity, in C_p)
/// of valuation -sigma.
struct PolygonSegment {
    Rat slope;
    std::size_t length;
    bool operator==(const PolygonSegment&) const = default;
};

struct NewtonPolygon {
    std::size_t zero_order = 0;  // multiplicity of the root 0 (valuation +inf)
    std::vector<PolygonSegment> segments;  // slopes strictly increasing

    /// Root valuations as (valuation, multiplicity); the root 0 reported as
    /// valuation infinity via ValExt::inf().
    std::vector<std::pair<ValExt, std::size_t>> root_valuations() const {
        std::vector<std::pair<ValExt, std::size_t>> out;
        if (zero_order > 0) out.emplace_back(ValExt::inf(), zero_order);
        for (const auto& s : segments) out.emplace_back(ValExt(Rat(-s.slope)), s.length);
        return out;
    }

    std::size_t count_in_radius(const LogRadius& radius) const {
        std::size_t n = zero_order;
        for (const auto& s : segments)
            if (radius.contains_valuation(ValExt(Rat(-s.slope)))) n += s.length;
        return n;
    }
};

namespace detail {
struct HullPoint {
    std::size_t index;
    BigInt val;
};
// cross product sign of (b-a) x (c-a) on (index, valuation) points
inline int orient(const HullPoint& a, const HullPoint& b, const HullPoint& c) {
    BigInt lhs = (BigInt(b.index) - BigInt(a.index)) * (c.val - a.val);
    BigInt rhs = (BigInt(c.index) - BigInt(a.index)) * (b.val - a.val);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}
}  // namespace detail

/// Hull vertices (index, valuation) of the lower Newton polygon of f at p,
/// past the zero-order part. Exposed for copolygon construction and CSV dumps.
inline std::vector<std::pair<std::size_t, BigInt>> newton_hull_vertices(const Poly& f,
                                                                        const BigInt& p) {
    if (f.is_zero()) throw ZeroPolynomial("newton polygon of 0");
    std::vector<detail::HullPoint> pts;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); ++i) {
        if (f[i] == 0) continue;
        pts.push_back({i, *valuation(f[i], p)});
    }
    std::vector<detail::HullPoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2 && detail::orient(hull[hull.size() - 2], hull.back(), pt) <= 0)
            hull.pop_back();
        hull.push_back(pt);
    }
    std::vector<std::pair<std::size_t, BigInt>> out;
    out.reserve(hull.size());
    for (const auto& h : hull) out.emplace_back(h.index, h.val);
    return out;
}

inline NewtonPolygon newton_polygon(const Poly& f, const BigInt& p) {
    NewtonPolygon np;
    if (f.is_zero()) throw ZeroPolynomial("newton polygon of 0");
    std::size_t first = 0;
    while (f[first] == 0) ++first;
    np.zero_order = first;
    auto hull = newton_hull_vertices(f, p);
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rat slope(hull[k + 1].second - hull[k].second,
                  BigInt(hull[k + 1].first) - BigInt(hull[k].first));
        np.segments.push_back({slope, hull[k + 1].first - hull[k].first});
    }
    return np;
}

/// Number of roots of f (with multiplicity, over C_p) in the disk of the
/// given radius about the center. Roots at the center count as inside.
inline std::size_t count_roots_in_disk(const Poly& f, const BigInt& p, const Rat& center,
                                       const LogRadius& radius) {
    if (f.is_zero()) throw ZeroPolynomial("count_roots_in_disk(0)");
    return newton_polygon(f.shift(center), p).count_in_radius(radius);
}

/// CSV rows "(i, v_p(a_i), on_hull)" for every nonzero coefficient.
inline std::string polygon_csv(const Poly& f, const BigInt& p) {
    auto hull = newton_hull_vertices(f, p);
    std::ostringstream os;
    os << "i,valuation,on_hull\n";
    for (std::size_t i = 0; i <= static_cast<std::size_t>(f.degree()); ++i) {
        if (f[i] == 0) continue;
        BigInt v = *valuation(f[i], p);
        // on the hull boundary: matches the linear interpolation of a segment
        bool on = false;
        for (std::size_t k = 0; !on && k < hull.size(); ++k) {
            if (hull[k].first == i) on = v == hull[k].second;
            if (k + 1 < hull.size() && hull[k].first < i && i < hull[k + 1].first) {
                Rat interp = Rat(hull[k].second) +
                             Rat(hull[k + 1].second - hull[k].second, 1) *
                                 Rat(BigInt(i) - BigInt(hull[k].first),
                                     BigInt(hull[k + 1].first) - BigInt(hull[k].first));
                on = Rat(v) == interp;
            }
        }
        os << i << "," << v.str() << "," << (on ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace pdyn
