#ifndef SYMWEB_QUADAUTO_HPP
#define SYMWEB_QUADAUTO_HPP

#include <cstdint>
#include <vector>

#include "symweb/equiv.hpp"
#include "symweb/web.hpp"

namespace symweb {

// A web read as a linear system of quadrics in P^n, n > m, char != 2,
// with the Gram matrices spanning an (m+1)-dimensional space.
struct QuadricSystem {
    SymWeb web;
    std::size_t span_dim;

    static QuadricSystem make(const SymWeb& w);
};

// n+1 - rank of a Gram matrix; char != 2 only.
int corank(const Mat& gram);

// A projective point over F_{q^s}: n+1 coordinates, each a length-s
// coefficient vector over F_q; first nonzero coordinate normalized to 1.
struct ProjectivePoint {
    std::vector<std::vector<std::uint32_t>> coords;
};

// All F_{q^s}-points of the base locus X_Q, one representative per
// projective class, in enumeration order.
std::vector<ProjectivePoint> base_locus_points(const QuadricSystem& Q, unsigned ext_degree,
                                               const EnumOptions& opt = {});

struct GroupReport {
    std::uint64_t e_order = 0;    // |E_Q|
    std::uint64_t f_order = 0;    // |F_Q|
    std::uint64_t p_order = 0;    // |P_Q| = q-1
    std::uint64_t h_order = 0;    // |H_Q| = |E_Q| / |F_Q|
    std::uint64_t aut_order = 0;  // |Aut_{P^n}(X_Q)| = |E_Q| / (q-1)
    std::uint64_t norm_kernel = 0;
    bool exactness_ok = false;
    bool kernel_is_pq = false; // scalar P elements are exactly {(a^2 I, a I)}
    std::vector<GroupElem> witnesses; // first accepted (A, P), up to 3
    std::vector<std::pair<Mat, Scalar>> f_elements; // all of F_Q as (P, u)
};

// Brute force over GL_{n+1}(F_q): accumulate E_Q and F_Q, cross-compute
// |ker Nbar| through the endomorphism algebra, and verify the exact
// sequence 0 -> ker Nbar -> Aut(X_Q) -> H_Q -> 0 at the level of orders
// plus an explicit bijection F_Q/P_Q -> ker Nbar.
GroupReport stabilizer_groups(const QuadricSystem& Q, const EnumOptions& opt = {});

} // namespace symweb

#endif
