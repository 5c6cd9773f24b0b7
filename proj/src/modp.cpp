#include "symweb/modp.hpp"

namespace symweb::modp {

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp, std::uint64_t sat) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && v > sat / base) return sat;
        v *= base;
        if (v > sat) return sat;
    }
    return v;
}

std::uint64_t gl_order(std::uint64_t q, std::size_t s, std::uint64_t sat) {
    std::uint64_t qs = pow_sat(q, s, sat);
    if (qs >= sat) return sat;
    std::uint64_t v = 1, qi = 1;
    for (std::size_t i = 0; i < s; ++i) {
        std::uint64_t factor = qs - qi;
        if (factor != 0 && v > sat / factor) return sat;
        v *= factor;
        qi *= q;
    }
    return v;
}

std::vector<std::uint32_t> inverse_table(std::uint32_t p) {
    std::vector<std::uint32_t> inv(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) {
        std::int64_t x0 = 1, x1 = 0, u = a, b = p;
        while (b) {
            std::int64_t q = u / b, t = u - q * b;
            u = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        x0 %= (std::int64_t)p;
        if (x0 < 0) x0 += p;
        inv[a] = (std::uint32_t)x0;
    }
    return inv;
}

WebEnc encode_web(const SymWeb& w) {
    if (!w.field().finite()) throw DomainError("raw web encoding requires a finite field");
    WebEnc e;
    e.p = w.field().characteristic();
    e.m = w.m();
    e.n = w.n();
    std::size_t s = e.msize();
    e.a.resize((std::size_t)(e.m + 1) * s * s);
    for (int i = 0; i <= e.m; ++i)
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = 0; c < s; ++c)
                e.mat(i)[r * s + c] = w.mat(i).at(r, c).residue_value();
    return e;
}

SymWeb decode_web(const WebEnc& e) {
    Field f = Field::prime(e.p);
    std::size_t s = e.msize();
    std::vector<Mat> mats;
    for (int i = 0; i <= e.m; ++i) {
        Mat M(f, s, s);
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = 0; c < s; ++c)
                M.at(r, c) = Scalar::residue(f, e.mat(i)[r * s + c]);
        mats.push_back(std::move(M));
    }
    return SymWeb(f, e.m, e.n, std::move(mats));
}

void congruence_transform(std::uint32_t p, std::size_t s, const std::uint32_t* P,
                          const std::uint32_t* M, std::uint32_t* T, std::uint32_t* U) {
    // accumulates s products below 2^64: callers reach this only through
    // enumeration caps that force s * p^2 << 2^64
    // U = M P
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < s; ++k)
                acc += (std::uint64_t)M[i * s + k] * P[k * s + j];
            U[i * s + j] = (std::uint32_t)(acc % p);
        }
    // T = tP U
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < s; ++k)
                acc += (std::uint64_t)P[k * s + i] * U[k * s + j];
            T[i * s + j] = (std::uint32_t)(acc % p);
        }
}

namespace {

// polynomial helpers mod p for the irreducibility search
using Poly = std::vector<std::uint32_t>; // low-to-high, trimmed

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmod(Poly a, const Poly& f, std::uint32_t p, const std::vector<std::uint32_t>& inv) {
    ptrim(a);
    while (a.size() >= f.size()) {
        std::uint32_t c = (std::uint32_t)((std::uint64_t)a.back() * inv[f.back()] % p);
        std::size_t shift = a.size() - f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::uint64_t sub = (std::uint64_t)c * f[i] % p;
            a[shift + i] = (std::uint32_t)((a[shift + i] + p - sub) % p);
        }
        ptrim(a);
    }
    return a;
}

Poly pmul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (std::uint32_t)((r[i + j] + (std::uint64_t)a[i] * b[j]) % p);
    return r;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p, const std::vector<std::uint32_t>& inv) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        Poly r = pmod(a, b, p, inv);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool irreducible(const Poly& f, std::uint32_t p, const std::vector<std::uint32_t>& inv) {
    // f monic of degree s >= 1: irreducible iff gcd(f, t^{p^d} - t) = 1
    // for all d <= s/2
    std::size_t s = f.size() - 1;
    Poly t{0, 1};
    Poly frob = t; // t^{p^d} mod f, starting at d = 0
    for (std::size_t d = 1; 2 * d <= s; ++d) {
        // raise to the p-th power: frob = frob^p mod f
        Poly acc{1};
        Poly base = frob;
        std::uint32_t e = p;
        while (e) {
            if (e & 1) acc = pmod(pmul(acc, base, p), f, p, inv);
            base = pmod(pmul(base, base, p), f, p, inv);
            e >>= 1;
        }
        frob = acc;
        // gcd(f, frob - t)
        Poly diff = frob;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        ptrim(diff);
        Poly g = pgcd(f, diff, p, inv);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace

ExtField ExtField::make(std::uint32_t p, unsigned s) {
    if (s == 0) throw DomainError("extension degree must be >= 1");
    ExtField F;
    F.p = p;
    F.s = s;
    F.modulus.assign(s, 0);
    if (s == 1) {
        return F; // F_p itself; modulus t
    }
    auto inv = inverse_table(p);
    std::uint64_t total = pow_sat(p, s, UINT64_MAX);
    for (std::uint64_t code = 0;; ++code) {
        if (code >= total) throw DomainError("no irreducible polynomial found");
        Poly f(s + 1, 0);
        std::uint64_t v = code;
        for (unsigned i = 0; i < s; ++i) {
            f[i] = (std::uint32_t)(v % p);
            v /= p;
        }
        f[s] = 1;
        if (f[0] == 0) continue; // t divides f
        if (irreducible(f, p, inv)) {
            for (unsigned i = 0; i < s; ++i) F.modulus[i] = f[i];
            return F;
        }
    }
}

ExtField::Elt ExtField::add(const Elt& a, const Elt& b) const {
    Elt r(s);
    for (unsigned i = 0; i < s; ++i) r[i] = (a[i] + b[i]) % p;
    return r;
}

ExtField::Elt ExtField::mul_base(const Elt& a, std::uint32_t c) const {
    Elt r(s);
    for (unsigned i = 0; i < s; ++i) r[i] = (std::uint32_t)((std::uint64_t)a[i] * c % p);
    return r;
}

ExtField::Elt ExtField::mul(const Elt& a, const Elt& b) const {
    std::vector<std::uint64_t> prod(2 * s - 1, 0);
    for (unsigned i = 0; i < s; ++i)
        for (unsigned j = 0; j < s; ++j)
            prod[i + j] = (prod[i + j] + (std::uint64_t)a[i] * b[j]) % p;
    // reduce by t^s = -modulus
    for (unsigned d = 2 * s - 2; d >= s; --d) {
        std::uint64_t c = prod[d];
        if (c) {
            prod[d] = 0;
            for (unsigned i = 0; i < s; ++i)
                prod[d - s + i] = (prod[d - s + i] + (std::uint64_t)(p - modulus[i]) * c) % p;
        }
        if (d == s) break;
    }
    Elt r(s);
    for (unsigned i = 0; i < s; ++i) r[i] = (std::uint32_t)prod[i];
    return r;
}

std::uint64_t ExtField::order() const {
    return pow_sat(p, s, UINT64_MAX);
}

} // namespace symweb::modp
