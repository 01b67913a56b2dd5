#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace pdyn {

class ZeroPolynomial : public std::domain_error {
public:
    explicit ZeroPolynomial(const std::string& what) : std::domain_error(what) {}
};

/// Univariate polynomial with exact rational coefficients, indexed 0..deg.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const Rat& a) { return Poly({a}); }
    static Poly monomial(std::size_t k, const Rat& a = 1) {
        std::vector<Rat> c(k + 1, Rat(0));
        c[k] = a;
        return Poly(std::move(c));
    }
    /// z + a
    static Poly linear_shift(const Rat& a) { return Poly({a, Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rat& operator[](std::size_t i) const {
        static const Rat kZero(0);
        return i < c_.size() ? c_[i] : kZero;
    }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const {
        if (is_zero()) throw ZeroPolynomial("leading coefficient of 0");
        return c_.back();
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    Poly operator+(const Poly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly operator*(const Rat& s) const {
        Poly r = *this;
        for (auto& a : r.c_) a *= s;
        r.trim();
        return r;
    }

    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(i);
        return Poly(std::move(r));
    }

    /// f(z + a), exact Taylor shift via Horner accumulation.
    Poly shift(const Rat& a) const {
        if (a == 0) return *this;
        Poly result;
        Poly zpa = linear_shift(a);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            result = result * zpa + constant(*it);
        return result;
    }

    /// Composition f(g(z)).
    Poly compose(const Poly& g) const {
        Poly result;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            result = result * g + constant(*it);
        return result;
    }

    /// Quotient and remainder over Q.
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.is_zero()) throw ZeroPolynomial("division by zero polynomial");
        Poly q, r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
            Rat s = r.leading() / d.leading();
            Poly t = monomial(k, s);
            q = q + t;
            r = r - t * d;
        }
        return {q, r};
    }
    bool divides(const Poly& dividend) const { return dividend.divrem(*this).second.is_zero(); }

    /// Monic gcd over Q.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a.divrem(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a * (Rat(1) / a.leading());
        return a;
    }

    std::string str(const std::string& var = "z") const {
        if (is_zero()) return "0";
        std::string s;
        for (long i = degree(); i >= 0; --i) {
            const Rat& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            if (!s.empty()) s += a > 0 ? " + " : " - ";
            else if (a < 0) s += "-";
            Rat aa = a < 0 ? Rat(-a) : a;
            bool need_coeff = (aa != 1) || i == 0;
            if (need_coeff) s += aa.str();
            if (i > 0) {
                if (need_coeff) s += "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

inline bool is_squarefree(const Poly& f) {
    if (f.is_zero()) throw ZeroPolynomial("is_squarefree(0)");
    return Poly::gcd(f, f.derivative()).degree() <= 0;
}

/// Squarefree decomposition f = prod g_i^i (Yun), returned as (g_i, i) with
/// nonconstant g_i only.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() <= 0) return out;
    Poly a = f * (Rat(1) / f.leading());
    Poly g = Poly::gcd(a, a.derivative());
    Poly w = a.divrem(g).first;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = Poly::gcd(w, g);
        Poly factor = w.divrem(y).first;
        if (factor.degree() > 0) out.emplace_back(factor, i);
        w = std::move(y);
        g = g.divrem(w).first;
        ++i;
    }
    return out;
}

/// Resultant via the Euclidean remainder sequence over Q.
inline Rat resultant(Poly a, Poly b) {
    if (a.is_zero() || b.is_zero()) return 0;
    Rat res = 1;
    while (b.degree() > 0) {
        Poly r = a.divrem(b).second;
        long da = a.degree(), db = b.degree();
        if (r.is_zero()) return 0;
        Rat lead_b = b.leading();
        res *= (da % 2 == 1 && db % 2 == 1) ? Rat(-1) : Rat(1);
        // res(a,b) = lc(b)^(deg a - deg r) * (-1)^(da*db) * res(b, r)
        Rat pw = 1;
        for (long i = 0; i < da - r.degree(); ++i) pw *= lead_b;
        res *= pw;
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    Rat pw = 1;
    for (long i = 0; i < a.degree(); ++i) pw *= b[0];
    return res * pw;
}

/// Rational roots of f, with multiplicity, via the rational root theorem on
/// the primitive integer model. Returns (root, multiplicity) pairs and the
/// rootless cofactor.
inline std::pair<std::vector<std::pair<Rat, int>>, Poly> rational_roots(const Poly& f) {
    std::vector<std::pair<Rat, int>> roots;
    Poly rest = f;
    if (f.degree() <= 0) return {roots, rest};
    // strip the root at 0 first
    int mult0 = 0;
    while (!rest.is_zero() && rest[0] == 0 && rest.degree() >= 1) {
        rest = rest.divrem(Poly::monomial(1)).first;
        ++mult0;
    }
    if (mult0 > 0) roots.emplace_back(Rat(0), mult0);
    if (rest.degree() <= 0) return {roots, rest};

    // integer model: clear denominators
    BigInt den_lcm = 1;
    for (const auto& a : rest.coeffs()) {
        BigInt d = denominator(a);
        den_lcm = den_lcm / boost::multiprecision::gcd(den_lcm, d) * d;
    }
    std::vector<BigInt> ic;
    ic.reserve(rest.coeffs().size());
    for (const auto& a : rest.coeffs()) ic.push_back(numerator(a * Rat(den_lcm)));

    auto divisors = [](BigInt n) {
        std::vector<BigInt> ds;
        if (n < 0) n = -n;
        for (BigInt i = 1; i * i <= n; ++i) {
            if (n % i == 0) {
                ds.push_back(i);
                if (i * i != n) ds.push_back(n / i);
            }
        }
        return ds;
    };
    BigInt a0 = ic.front(), an = ic.back();
    // desk-scale guard: candidate enumeration only for moderate constants
    if (boost::multiprecision::abs(a0) > BigInt("1000000000000000000")) return {roots, rest};
    std::vector<Rat> candidates;
    for (const auto& pnum : divisors(a0))
        for (const auto& pden : divisors(an)) {
            candidates.push_back(Rat(pnum, pden));
            candidates.push_back(Rat(-pnum, pden));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& cand : candidates) {
        int mult = 0;
        while (rest.degree() >= 1 && rest.eval(cand) == 0) {
            rest = rest.divrem(Poly({-cand, Rat(1)})).first;
            ++mult;
        }
        if (mult > 0) roots.emplace_back(cand, mult);
        if (rest.degree() <= 0) break;
    }
    return {roots, rest};
}

}  // namespace pdyn
