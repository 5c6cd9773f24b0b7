#ifndef SYMWEB_MODP_HPP
#define SYMWEB_MODP_HPP

#include <cstdint>
#include <vector>

#include "symweb/web.hpp"

// Word-size arithmetic kernels for the exhaustive enumerations over F_p.
// Everything here works on raw residue arrays; the Scalar layer stays out
// of the inner loops.
namespace symweb::modp {

// saturating small power
std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp, std::uint64_t sat);

// |GL_s(F_q)|, saturating
std::uint64_t gl_order(std::uint64_t q, std::size_t s, std::uint64_t sat);

std::vector<std::uint32_t> inverse_table(std::uint32_t p);

// raw web encoding: (m+1) full row-major s*s matrices, s = n+1
struct WebEnc {
    std::uint32_t p;
    int m, n;
    std::vector<std::uint32_t> a;

    std::size_t msize() const { return (std::size_t)n + 1; }
    const std::uint32_t* mat(int i) const { return a.data() + (std::size_t)i * msize() * msize(); }
    std::uint32_t* mat(int i) { return a.data() + (std::size_t)i * msize() * msize(); }
};

WebEnc encode_web(const SymWeb& w);
SymWeb decode_web(const WebEnc& e);

// T = tP M P over F_p; all buffers s*s row-major, U is scratch
void congruence_transform(std::uint32_t p, std::size_t s, const std::uint32_t* P,
                          const std::uint32_t* M, std::uint32_t* T, std::uint32_t* U);

// Enumerates invertible s x s matrices over F_p whose first row, read as a
// big-endian base-p integer, lies in [row0_lo, row0_hi). Rows are produced in
// lexicographic order with an early-exit rank filter on partial matrices.
// The visitor gets the row-major matrix; return false to stop early.
template <typename Visit>
void for_each_invertible(std::uint32_t p, std::size_t s, std::uint64_t row0_lo,
                         std::uint64_t row0_hi, Visit&& visit) {
    std::vector<std::uint64_t> pw(s + 1, 1);
    for (std::size_t i = 1; i <= s; ++i) pw[i] = pw[i - 1] * p;

    std::vector<std::uint32_t> rows(s * s);   // the candidate matrix
    std::vector<std::uint32_t> ech(s * s);    // echelon rows, pivot normalized to 1
    std::vector<std::size_t> pivcol(s);
    std::vector<std::uint32_t> tmp(s);
    bool stop = false;

    auto decode_row = [&](std::uint64_t v, std::uint32_t* out) {
        for (std::size_t j = s; j-- > 0;) {
            out[j] = (std::uint32_t)(v % p);
            v /= p;
        }
    };

    auto rec = [&](auto&& self, std::size_t row) -> void {
        std::uint64_t lo = row == 0 ? row0_lo : 0;
        std::uint64_t hi = row == 0 ? row0_hi : pw[s];
        for (std::uint64_t v = lo; v < hi && !stop; ++v) {
            std::uint32_t* r = rows.data() + row * s;
            decode_row(v, r);
            // reduce a copy against the echelon rows
            for (std::size_t j = 0; j < s; ++j) tmp[j] = r[j];
            for (std::size_t k = 0; k < row; ++k) {
                std::uint32_t c = tmp[pivcol[k]];
                if (c == 0) continue;
                std::uint32_t mc = p - c;
                const std::uint32_t* e = ech.data() + k * s;
                for (std::size_t j = 0; j < s; ++j)
                    tmp[j] = (std::uint32_t)((tmp[j] + (std::uint64_t)mc * e[j]) % p);
            }
            std::size_t piv = 0;
            while (piv < s && tmp[piv] == 0) ++piv;
            if (piv == s) continue; // dependent, skip the whole subtree
            if (row + 1 == s) {
                if (!visit((const std::uint32_t*)rows.data())) stop = true;
                continue;
            }
            // normalize pivot to 1 and push as echelon row
            std::uint32_t inv = 1;
            {
                // extended Euclid mod p
                std::int64_t a = tmp[piv], b = p, x0 = 1, x1 = 0;
                while (b) {
                    std::int64_t q = a / b, t = a - q * b;
                    a = b; b = t;
                    t = x0 - q * x1; x0 = x1; x1 = t;
                }
                x0 %= (std::int64_t)p;
                if (x0 < 0) x0 += p;
                inv = (std::uint32_t)x0;
            }
            std::uint32_t* e = ech.data() + row * s;
            for (std::size_t j = 0; j < s; ++j)
                e[j] = (std::uint32_t)((std::uint64_t)tmp[j] * inv % p);
            pivcol[row] = piv;
            self(self, row + 1);
        }
    };
    rec(rec, 0);
}

// F_{p^s} as F_p[t]/(modulus); the modulus is the first monic irreducible
// polynomial of degree s in base-p counting order of its low coefficients.
struct ExtField {
    std::uint32_t p = 0;
    unsigned s = 1;
    std::vector<std::uint32_t> modulus; // low coefficients c_0..c_{s-1}; leading 1 implicit

    static ExtField make(std::uint32_t p, unsigned s);

    using Elt = std::vector<std::uint32_t>; // length s, coefficients of 1, t, ..., t^{s-1}

    Elt zero() const { return Elt(s, 0); }
    Elt from_base(std::uint32_t a) const {
        Elt e(s, 0);
        e[0] = a % p;
        return e;
    }
    bool is_zero(const Elt& a) const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
    Elt add(const Elt& a, const Elt& b) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt mul_base(const Elt& a, std::uint32_t c) const;
    std::uint64_t order() const; // p^s
};

} // namespace symweb::modp

#endif
