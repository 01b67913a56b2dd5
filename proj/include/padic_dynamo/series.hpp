#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "newton_polygon.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace pdyn {

class TailNotDominated : public std::domain_error {
public:
    explicit TailNotDominated(const std::string& what) : std::domain_error(what) {}
};
class ConstantSeries : public std::domain_error {
public:
    explicit ConstantSeries(const std::string& what) : std::domain_error(what) {}
};
class NotAttracting : public std::domain_error {
public:
    explicit NotAttracting(const std::string& what) : std::domain_error(what) {}
};

/// Certificate that the truncated tail is controlled:
/// v_p(a_n) + n*ref_exponent >= bound for all n past the truncation.
struct TailBound {
    Rat ref_exponent;
    Rat bound;
};

/// Power series truncation a_0..a_T with an optional tail certificate.
/// Without a certificate the object is an exact polynomial.
struct TruncatedSeries {
    Poly head;
    std::optional<TailBound> tail;

    static TruncatedSeries polynomial(Poly f) { return {std::move(f), std::nullopt}; }

    bool is_exact() const { return !tail.has_value(); }

    /// Lower bound on v(a_n) + n*rho over all tail indices n > T, or inf.
    ValExt tail_floor(const Rat& rho) const {
        if (!tail) return ValExt::inf();
        if (rho < tail->ref_exponent)
            return ValExt::inf();  // marker replaced by throw at call sites
        std::size_t t1 = head.is_zero() ? 1 : static_cast<std::size_t>(head.degree()) + 1;
        // v + n*rho = (v + n*ref) + n*(rho - ref) >= bound + t1*(rho - ref)
        return ValExt(tail->bound + Rat(t1) * (rho - tail->ref_exponent));
    }
    bool tail_certified_at(const Rat& rho) const {
        return !tail || rho >= tail->ref_exponent;
    }
};

/// e with ||h|| = p^{-e} on the closed disk of exponent rho about 0:
/// e = min_n (v_p(a_n) + n*rho).
inline Rat gauss_norm_exponent(const TruncatedSeries& h, const BigInt& p, const Rat& rho) {
    if (h.head.is_zero() && h.is_exact()) throw ZeroPolynomial("gauss norm of 0");
    if (!h.tail_certified_at(rho)) throw TailNotDominated("gauss_norm_exponent: tail unbounded");
    std::optional<Rat> best;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(std::max<long>(h.head.degree(), 0));
         ++n) {
        if (h.head[n] == 0) continue;
        Rat e = Rat(*valuation(h.head[n], p)) + Rat(n) * rho;
        if (!best || e < *best) best = e;
    }
    ValExt floor = h.tail_floor(rho);
    if (!best) {
        // head is zero; only the tail remains, and a floor is not a value
        throw TailNotDominated("gauss_norm_exponent: head empty");
    }
    if (!floor.infinite && floor.value <= *best)
        throw TailNotDominated("gauss_norm_exponent: tail may attain the minimum");
    return *best;
}

/// Weierstrass degree: smallest minimizer of v(a_n)+n*rho on open disks,
/// greatest on rational closed disks.
inline std::size_t weierstrass_degree(const TruncatedSeries& h, const BigInt& p,
                                      const LogRadius& radius) {
    Rat e = gauss_norm_exponent(h, p, radius.exponent);
    std::size_t smallest = 0, greatest = 0;
    bool found = false;
    for (std::size_t n = 0; n <= static_cast<std::size_t>(std::max<long>(h.head.degree(), 0));
         ++n) {
        if (h.head[n] == 0) continue;
        if (Rat(*valuation(h.head[n], p)) + Rat(n) * radius.exponent == e) {
            if (!found) smallest = n;
            greatest = n;
            found = true;
        }
    }
    return radius.open ? smallest : greatest;
}

/// Breakpoints of the copolygon on an exponent interval, ordered by
/// increasing exponent (decreasing radius). right_slope at rho is the
/// Weierstrass degree on the closed disk of exponent rho, i.e. the slope of
/// the norm exponent toward larger radii.
struct CopolygonPoint {
    Rat exponent;
    Rat value;        // Gauss norm exponent at this radius
    long right_slope; // greatest minimizing index at this closed radius
};
using Copolygon = std::vector<CopolygonPoint>;

inline Copolygon copolygon(const TruncatedSeries& h, const BigInt& p, const Rat& rho_lo,
                           const Rat& rho_hi) {
    if (rho_lo > rho_hi) throw std::invalid_argument("copolygon: empty interval");
    if (!h.tail_certified_at(rho_lo)) throw TailNotDominated("copolygon: tail unbounded");
    // breakpoints are where adjacent hull lines of (n, v_n) tie
    auto hull = newton_hull_vertices(h.head, p);
    std::vector<Rat> cuts{rho_lo, rho_hi};
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rat tie(hull[k].second - hull[k + 1].second,
                BigInt(hull[k + 1].first) - BigInt(hull[k].first));
        if (tie > rho_lo && tie < rho_hi) cuts.push_back(tie);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Copolygon out;
    for (const auto& rho : cuts) {
        CopolygonPoint pt;
        pt.exponent = rho;
        pt.value = gauss_norm_exponent(h, p, rho);
        pt.right_slope =
            static_cast<long>(weierstrass_degree(h, p, LogRadius::closed_disk(rho)));
        out.push_back(pt);
    }
    return out;
}

inline std::string copolygon_csv(const Copolygon& cp) {
    std::string s = "exponent,value,right_slope\n";
    for (const auto& pt : cp)
        s += pt.exponent.str() + "," + pt.value.str() + "," + std::to_string(pt.right_slope) +
             "\n";
    return s;
}

/// Distortion in base-p exponent form: delta_p = -rho + e_h - e_{h'},
/// the log_p of the sup-norm distortion on the closed disk of exponent rho.
inline Rat distortion(const TruncatedSeries& h, const BigInt& p, const Rat& rho) {
    TruncatedSeries dh{h.head.derivative(), std::nullopt};
    if (h.tail) {
        // v(n a_n) + (n-1) ref >= bound - ref, since v(n) >= 0
        dh.tail = TailBound{h.tail->ref_exponent, h.tail->bound - h.tail->ref_exponent};
    }
    Rat e_h = gauss_norm_exponent(h, p, rho);
    Rat e_dh = gauss_norm_exponent(dh, p, rho);
    return -rho + (e_h - e_dh);
}

struct DiskImage {
    Rat center;       // h(0) = a_0
    LogRadius radius; // image disk radius about the center
    std::size_t multiplicity;
};

/// Image of the disk of the given radius about 0 under h, with the count of
/// preimages of each image point.
inline DiskImage image_disk(const TruncatedSeries& h, const BigInt& p, const LogRadius& disk) {
    TruncatedSeries shifted{h.head - Poly::constant(h.head[0]), h.tail};
    if (shifted.head.is_zero() && shifted.is_exact())
        throw ConstantSeries("image_disk: constant series");
    DiskImage img;
    img.center = h.head[0];
    img.radius.exponent = gauss_norm_exponent(shifted, p, disk.exponent);
    img.radius.open = disk.open;
    img.multiplicity = weierstrass_degree(shifted, p, disk);
    return img;
}

// ---------------------------------------------------------------------------
// Basin classification in a disk-shaped attracting basin.
// ---------------------------------------------------------------------------

enum class BasinVerdict {
    GammaMapsToZero,
    GammaWanders,
    CriticalPointWanders,
    HypothesisFails,
    Inconclusive,
};

inline const char* to_string(BasinVerdict v) {
    switch (v) {
        case BasinVerdict::GammaMapsToZero: return "GammaMapsToZero";
        case BasinVerdict::GammaWanders: return "GammaWanders";
        case BasinVerdict::CriticalPointWanders: return "CriticalPointWanders";
        case BasinVerdict::HypothesisFails: return "HypothesisFails";
        case BasinVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct Lemma52Certificate {
    BasinVerdict verdict = BasinVerdict::Inconclusive;
    // witness data (exponent scale) when applicable
    Rat r_exponent = 0;            // smallest nonzero-root radius of h
    std::optional<Rat> s_exponent; // h(closed disk S) = closed disk r
    std::size_t wdeg_on_S = 0;     // Weierstrass degree m on that disk
    std::size_t crit_in_rho = 0;   // M: roots of h' in the closed disk
    std::size_t crit_not_to_zero = 0;  // a
    std::size_t distinct_roots = 0;    // b
    std::vector<Rat> orbit_valuations; // finite orbit evidence for gamma
};

/// Exact piecewise-linear inversion: smallest exponent sigma <= start_exp
/// with min_{n>=1}(v_n + n*sigma) == target. Walks the hull lines.
inline std::optional<Rat> invert_image_exponent(const Poly& h, const BigInt& p,
                                                const Rat& target) {
    // image exponent of closed disk sigma is E(sigma) = min_{n>=1}(v_n+n sigma),
    // increasing in sigma; solve E(sigma) = target on each candidate line.
    std::optional<Rat> best;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(std::max<long>(h.degree(), 0)); ++n) {
        if (h[n] == 0) continue;
        Rat vn(*valuation(h[n], p));
        Rat sigma = (target - vn) / Rat(n);
        // must actually attain the min there
        Rat e = target;
        bool attains = true;
        for (std::size_t k = 1; k <= static_cast<std::size_t>(h.degree()); ++k) {
            if (h[k] == 0) continue;
            if (Rat(*valuation(h[k], p)) + Rat(k) * sigma < e) attains = false;
        }
        if (attains && (!best || sigma > *best)) best = sigma;  // largest exponent = smallest S
    }
    return best;
}

/// Classify the fate of gamma under a polynomial self-map h of the open disk
/// of exponent rho_R with h(0)=0, following the three-way basin dichotomy:
/// gamma eventually maps to 0, or gamma provably wanders, or a critical point
/// of h wanders. The wandering certificate is the strict-contraction zone
/// D(0,r): once a nonzero orbit point is inside, |h(x)| = |A_l||x|^l < |x|
/// forever, so the orbit is infinite.
inline Lemma52Certificate lemma52_classify(const TruncatedSeries& hs, const Rat& gamma,
                                           const BigInt& p, const Rat& rho_R,
                                           std::size_t budget = 32) {
    if (!hs.is_exact())
        throw TailNotDominated("lemma52_classify: exact polynomial input required");
    const Poly& h = hs.head;
    Lemma52Certificate cert;
    if (h.is_zero() || h[0] != 0)
        throw std::invalid_argument("lemma52_classify: need h(0)=0, h nontrivial");

    std::size_t ell = 0;
    while (h[ell] == 0) ++ell;
    Rat v_Al(*valuation(h[ell], p));

    // self-map and convergence: polynomial, so only check image containment
    TruncatedSeries hm0{h, std::nullopt};
    std::size_t d = weierstrass_degree(hm0, p, LogRadius::open_disk(rho_R));
    cert.wdeg_on_S = d;

    // hypothesis |A_l| R^(l-1) < min{|m|^m : 1<=m<=d}:
    // v(A_l) + (l-1) rho_R > max_m m*v_p(m)
    Rat rhs = 0;
    for (std::size_t m = 2; m <= d; ++m) {
        Rat mv = Rat(m) * Rat(*valuation(Rat(m), p));
        if (mv > rhs) rhs = mv;
    }
    if (!(v_Al + Rat(ell - 1) * rho_R > rhs)) {
        cert.verdict = BasinVerdict::HypothesisFails;
        return cert;
    }

    // r: smallest radius holding a nonzero root = largest nonzero-root
    // valuation; from the polygon past the zero part.
    NewtonPolygon np = newton_polygon(h, p);
    std::optional<Rat> r_exp;
    for (const auto& seg : np.segments) {
        Rat val = -seg.slope;
        if (val > rho_R) {  // root inside the open disk
            if (!r_exp || val > *r_exp) r_exp = val;
        }
    }
    cert.r_exponent = r_exp ? *r_exp : rho_R;  // no nonzero roots: r = R

    // witness: S with h(closed S) = closed r, and counts at that radius
    if (r_exp) {
        cert.s_exponent = invert_image_exponent(h, p, *r_exp);
        if (cert.s_exponent) {
            LogRadius S = LogRadius::closed_disk(*cert.s_exponent);
            cert.wdeg_on_S = weierstrass_degree(hm0, p, S);
            Poly dh = h.derivative();
            cert.crit_in_rho = newton_polygon(dh, p).count_in_radius(S);
            Poly sqf = h.divrem(Poly::gcd(h, dh)).first;
            cert.distinct_roots = newton_polygon(sqf, p).count_in_radius(S);
            std::size_t mb = cert.wdeg_on_S - cert.distinct_roots;  // M - a = m - b
            cert.crit_not_to_zero = cert.crit_in_rho - mb;
        }
    }

    // critical points of h in D(0,r) \ {0}
    {
        NewtonPolygon npd = newton_polygon(h.derivative(), p);
        std::size_t crit_inside = 0;
        for (const auto& seg : npd.segments)
            if (-seg.slope > cert.r_exponent) crit_inside += seg.length;
        if (crit_inside > 0) {
            cert.verdict = BasinVerdict::CriticalPointWanders;
            return cert;
        }
    }

    // follow the orbit of gamma exactly
    Rat x = gamma;
    for (std::size_t i = 0; i < budget; ++i) {
        if (x == 0) {
            cert.verdict = BasinVerdict::GammaMapsToZero;
            return cert;
        }
        Rat vx(*valuation(x, p));
        cert.orbit_valuations.push_back(vx);
        if (vx > cert.r_exponent) {
            // inside the strict-contraction zone and nonzero: wanders
            cert.verdict = BasinVerdict::GammaWanders;
            return cert;
        }
        x = h.eval(x);
        // height guard; classification almost always resolves in a few steps
        if (boost::multiprecision::msb(boost::multiprecision::abs(numerator(x)) + 1) > 1u << 20)
            break;
    }
    cert.verdict = BasinVerdict::Inconclusive;
    return cert;
}

}  // namespace pdyn
