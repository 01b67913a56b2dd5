#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace pdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator(const Rat& x) { return boost::multiprecision::denominator(x); }

class NegativeValuation : public std::domain_error {
public:
    explicit NegativeValuation(const std::string& what) : std::domain_error(what) {}
};

class BadSeed : public std::domain_error {
public:
    explicit BadSeed(const std::string& what) : std::domain_error(what) {}
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// p-adic valuation of a nonzero integer.
inline BigInt int_valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw std::invalid_argument("int_valuation: zero argument");
    BigInt v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// v_p(x) for rational x, or nullopt for x = 0 (valuation +infinity).
inline std::optional<BigInt> valuation(const Rat& x, const BigInt& p) {
    if (x == 0) return std::nullopt;
    BigInt num = numerator(x), den = denominator(x);
    BigInt v = 0;
    if (num % p == 0) v = int_valuation(num, p);
    if (den % p == 0) v -= int_valuation(den, p);
    return v;
}

/// Element of Q ∪ {+∞}; the valuation/exponent scale all norms live on.
/// |x| = p^{-v}, so bigger value means smaller absolute value.
struct ValExt {
    bool infinite = false;
    Rat value = 0;

    ValExt() = default;
    ValExt(const Rat& v) : infinite(false), value(v) {}  // NOLINT: implicit by design
    ValExt(int v) : infinite(false), value(v) {}         // NOLINT
    static ValExt inf() {
        ValExt v;
        v.infinite = true;
        return v;
    }

    bool operator==(const ValExt& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return value == o.value;
    }
    std::strong_ordering operator<=>(const ValExt& o) const {
        if (infinite && o.infinite) return std::strong_ordering::equal;
        if (infinite) return std::strong_ordering::greater;
        if (o.infinite) return std::strong_ordering::less;
        if (value < o.value) return std::strong_ordering::less;
        if (value > o.value) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    ValExt operator+(const ValExt& o) const {
        if (infinite || o.infinite) return inf();
        return ValExt(value + o.value);
    }
    std::string str() const { return infinite ? "inf" : value.str(); }
};

inline ValExt valuation_ext(const Rat& x, const BigInt& p) {
    auto v = valuation(x, p);
    if (!v) return ValExt::inf();
    return ValExt(Rat(*v));
}

/// Radius p^{-exponent}; open/closed polarity. All comparisons are exact
/// rational comparisons of exponents, never of materialized radii.
struct LogRadius {
    Rat exponent = 0;
    bool open = true;

    static LogRadius open_disk(const Rat& rho) { return {rho, true}; }
    static LogRadius closed_disk(const Rat& rho) { return {rho, false}; }

    /// Is a point of valuation v inside this disk about the disk's center?
    bool contains_valuation(const ValExt& v) const {
        if (v.infinite) return true;
        return open ? v.value > exponent : v.value >= exponent;
    }
    bool operator==(const LogRadius&) const = default;
};

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g.
inline std::tuple<BigInt, BigInt, BigInt> ext_gcd(BigInt a, BigInt b) {
    BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        BigInt q = a / b;
        BigInt t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

inline BigInt mod_positive(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

inline BigInt inv_mod(const BigInt& a, const BigInt& m) {
    auto [g, x, y] = ext_gcd(mod_positive(a, m), m);
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_positive(x, m);
}

inline BigInt pow_mod(BigInt base, BigInt e, const BigInt& m) {
    BigInt r = 1;
    base = mod_positive(base, m);
    while (e > 0) {
        if (e % 2 == 1) r = r * base % m;
        base = base * base % m;
        e /= 2;
    }
    return r;
}

/// Canonical residue of x in [0, p^k). Requires v_p(x) >= 0.
inline BigInt padic_residue(const Rat& x, const BigInt& p, unsigned long k) {
    auto v = valuation(x, p);
    if (v && *v < 0) throw NegativeValuation("padic_residue: v_p(x) < 0");
    BigInt m = pow_int(p, k);
    BigInt num = mod_positive(numerator(x), m);
    BigInt den = mod_positive(denominator(x), m);
    return num * inv_mod(den, m) % m;
}

/// Finite-precision element of Z_p: x = p^valuation * unit with the unit
/// known modulo p^precision. Exact zero is flagged separately.
struct CappedPadic {
    BigInt p;
    bool is_zero = true;      // exact zero (valuation +infinity)
    BigInt valuation = 0;     // meaningful when !is_zero
    BigInt unit = 0;          // in [0, p^precision), coprime to p
    unsigned long precision = 1;

    static CappedPadic zero(const BigInt& p, unsigned long prec) {
        CappedPadic z;
        z.p = p;
        z.precision = prec;
        return z;
    }

    static CappedPadic from_rational(const Rat& x, const BigInt& p, unsigned long prec) {
        CappedPadic r;
        r.p = p;
        r.precision = prec;
        if (x == 0) return r;
        auto v = pdyn::valuation(x, p);
        r.is_zero = false;
        r.valuation = *v;
        Rat u = x;
        BigInt vv = *v;
        // strip the p-power so the remaining unit has valuation 0
        if (vv > 0)
            u /= Rat(pow_int(p, static_cast<unsigned long>(vv)));
        else if (vv < 0)
            u *= Rat(pow_int(p, static_cast<unsigned long>(-vv)));
        r.unit = padic_residue(u, p, prec);
        return r;
    }

    /// Residue modulo p^k of the value itself (requires valuation >= 0).
    BigInt residue(unsigned long k) const {
        BigInt m = pow_int(p, k);
        if (is_zero) return 0;
        if (valuation < 0) throw NegativeValuation("CappedPadic::residue");
        if (valuation >= static_cast<long>(k)) return 0;
        unsigned long v = static_cast<unsigned long>(valuation);
        if (v + k > precision + v)  // never: k <= precision assumed by callers
            throw std::logic_error("CappedPadic::residue: precision exhausted");
        return pow_int(p, v) * unit % m;
    }

    std::string str() const {
        if (is_zero) return "0";
        return "p^" + valuation.str() + " * (" + unit.str() + " mod " + p.str() + "^" +
               std::to_string(precision) + ")";
    }
};

/// Hensel/Teichmueller lift: the k-th root of unity in Z_p congruent to seed
/// mod p, to precision p^K. Requires k | p-1 and seed^k = 1 mod p.
inline CappedPadic hensel_unit_root(const BigInt& p, const BigInt& k, const BigInt& seed,
                                    unsigned long K) {
    if (pow_mod(seed, k, p) != 1) throw BadSeed("hensel_unit_root: seed^k != 1 mod p");
    BigInt x = mod_positive(seed, p);
    BigInt mod = p;
    for (unsigned long j = 1; j < K; ++j) {
        mod *= p;
        // Newton step for f(x) = x^k - 1; k is invertible mod p since k | p-1
        BigInt fx = mod_positive(pow_mod(x, k, mod) - 1, mod);
        BigInt dfx = k * pow_mod(x, k - 1, mod) % mod;
        x = mod_positive(x - fx * inv_mod(dfx, mod), mod);
    }
    CappedPadic r;
    r.p = p;
    r.precision = K;
    r.is_zero = false;
    r.valuation = 0;
    r.unit = x;
    return r;
}

}  // namespace pdyn
