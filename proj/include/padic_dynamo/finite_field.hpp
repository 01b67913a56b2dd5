#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace pdyn {

/// Element of F_p or of F_p[x]/(modulus): coefficient vector, low degree
/// first, trimmed.
using FFElem = std::vector<BigInt>;

/// F_p, or a quotient ring F_p[x]/(modulus) for a caller-supplied monic
/// irreducible modulus. Only finiteness and field arithmetic are relied on.
class FiniteField {
public:
    explicit FiniteField(BigInt p) : p_(std::move(p)) {}
    FiniteField(BigInt p, std::vector<BigInt> monic_modulus)
        : p_(std::move(p)), modulus_(std::move(monic_modulus)) {
        if (modulus_.size() < 2 || modulus_.back() != 1)
            throw std::invalid_argument("FiniteField: modulus must be monic, degree >= 1");
    }

    const BigInt& p() const { return p_; }
    std::size_t extension_degree() const { return modulus_.empty() ? 1 : modulus_.size() - 1; }

    FFElem zero() const { return {}; }
    FFElem one() const { return {BigInt(1)}; }
    FFElem from_int(const BigInt& n) const { return trim({mod_positive(n, p_)}); }
    FFElem from_rational(const Rat& x) const {
        return trim({padic_residue(x, p_, 1)});
    }

    bool is_zero(const FFElem& a) const { return a.empty(); }

    FFElem add(const FFElem& a, const FFElem& b) const {
        FFElem r(std::max(a.size(), b.size()), BigInt(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_positive(r[i] + b[i], p_);
        return trim(std::move(r));
    }
    FFElem neg(const FFElem& a) const {
        FFElem r = a;
        for (auto& x : r) x = mod_positive(-x, p_);
        return trim(std::move(r));
    }
    FFElem sub(const FFElem& a, const FFElem& b) const { return add(a, neg(b)); }
    FFElem mul(const FFElem& a, const FFElem& b) const {
        if (a.empty() || b.empty()) return {};
        FFElem r(a.size() + b.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = mod_positive(r[i + j] + a[i] * b[j], p_);
        return reduce(std::move(r));
    }
    FFElem inv(const FFElem& a) const {
        if (a.empty()) throw std::domain_error("FiniteField: inverse of 0");
        if (modulus_.empty()) return {inv_mod(a[0], p_)};
        // extended Euclid in F_p[x]
        FFElem r0 = modulus_, r1 = a, t0 = {}, t1 = one();
        while (!r1.empty()) {
            auto [q, r2] = poly_divmod(r0, r1);
            FFElem t2 = poly_sub(t0, poly_mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.size() != 1) throw std::domain_error("FiniteField: modulus not irreducible");
        BigInt c = inv_mod(r0[0], p_);
        for (auto& x : t0) x = mod_positive(x * c, p_);
        return trim(std::move(t0));
    }

    std::string str(const FFElem& a) const {
        if (a.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            if (!s.empty()) s += "+";
            s += a[i].str();
            if (i >= 1) s += "*x" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

private:
    FFElem trim(FFElem v) const {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }
    FFElem reduce(FFElem v) const {
        v = trim(std::move(v));
        if (modulus_.empty()) return v;
        std::size_t deg_m = modulus_.size() - 1;
        while (v.size() > deg_m) {
            BigInt lead = v.back();
            std::size_t shift = v.size() - 1 - deg_m;
            for (std::size_t i = 0; i < modulus_.size(); ++i)
                v[shift + i] = mod_positive(v[shift + i] - lead * modulus_[i], p_);
            v = trim(std::move(v));
        }
        return v;
    }
    std::pair<FFElem, FFElem> poly_divmod(FFElem a, const FFElem& b) const {
        FFElem q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, BigInt(0));
        BigInt binv = inv_mod(b.back(), p_);
        while (a.size() >= b.size() && !a.empty()) {
            BigInt f = mod_positive(a.back() * binv, p_);
            std::size_t shift = a.size() - b.size();
            q[shift] = f;
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = mod_positive(a[shift + i] - f * b[i], p_);
            a = trim(std::move(a));
        }
        return {trim(std::move(q)), std::move(a)};
    }
    FFElem poly_mul(const FFElem& a, const FFElem& b) const {
        if (a.empty() || b.empty()) return {};
        FFElem r(a.size() + b.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = mod_positive(r[i + j] + a[i] * b[j], p_);
        return trim(std::move(r));
    }
    FFElem poly_sub(const FFElem& a, const FFElem& b) const {
        FFElem r(std::max(a.size(), b.size()), BigInt(0));
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_positive(r[i] - b[i], p_);
        return trim(std::move(r));
    }

    BigInt p_;
    std::vector<BigInt> modulus_;  // empty for prime field
};

/// Polynomial over the residue field, low degree first, trimmed.
struct FFPoly {
    std::vector<FFElem> c;

    long degree() const { return static_cast<long>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    static FFPoly trim(const FiniteField& F, FFPoly f) {
        while (!f.c.empty() && F.is_zero(f.c.back())) f.c.pop_back();
        return f;
    }
    FFElem eval(const FiniteField& F, const FFElem& x) const {
        FFElem r = F.zero();
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = F.add(F.mul(r, x), *it);
        return r;
    }
};

inline FFPoly ffpoly_gcd(const FiniteField& F, FFPoly a, FFPoly b) {
    a = FFPoly::trim(F, std::move(a));
    b = FFPoly::trim(F, std::move(b));
    while (!b.is_zero()) {
        // remainder a mod b
        FFElem lead_inv = F.inv(b.c.back());
        FFPoly r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            FFElem f = F.mul(r.c.back(), lead_inv);
            std::size_t shift = r.c.size() - b.c.size();
            for (std::size_t i = 0; i < b.c.size(); ++i)
                r.c[shift + i] = F.sub(r.c[shift + i], F.mul(f, b.c[i]));
            r = FFPoly::trim(F, std::move(r));
        }
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace pdyn
