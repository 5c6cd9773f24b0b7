#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "symweb/endo.hpp"

using namespace symweb;

namespace {

SymWeb corpus_web(const std::string& name) {
    std::ifstream in(std::string(SYMWEB_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return SymWeb::parse(ss.str());
}

// independent brute force: count pairs (P, P') of 2x2 matrices over F_p
// with tP M_i = M_i P', using plain integer arithmetic
std::size_t count_pairs_oracle(const SymWeb& w) {
    REQUIRE(w.n() == 1);
    int p = (int)w.field().characteristic();
    int M[3][2][2];
    for (int i = 0; i <= 2; ++i)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) M[i][r][c] = (int)w.mat(i).at(r, c).residue_value();
    std::size_t count = 0;
    int total = 1;
    for (int i = 0; i < 8; ++i) total *= p;
    for (int code = 0; code < total; ++code) {
        int digits[8], v = code;
        for (int i = 0; i < 8; ++i) {
            digits[i] = v % p;
            v /= p;
        }
        int P[2][2] = {{digits[0], digits[1]}, {digits[2], digits[3]}};
        int Pp[2][2] = {{digits[4], digits[5]}, {digits[6], digits[7]}};
        bool ok = true;
        for (int i = 0; i <= 2 && ok; ++i)
            for (int r = 0; r < 2 && ok; ++r)
                for (int c = 0; c < 2; ++c) {
                    int lhs = (P[0][r] * M[i][0][c] + P[1][r] * M[i][1][c]) % p;
                    int rhs = (M[i][r][0] * Pp[0][c] + M[i][r][1] * Pp[1][c]) % p;
                    if (lhs != rhs) {
                        ok = false;
                        break;
                    }
                }
        if (ok) ++count;
    }
    return count;
}

SymWeb random_web(std::mt19937_64& rng, Field f, int m, int n) {
    std::vector<Mat> mats;
    for (int i = 0; i <= m; ++i) {
        Mat M(f, n + 1, n + 1);
        for (int r = 0; r <= n; ++r)
            for (int c = r; c <= n; ++c) {
                Scalar v = Scalar::of_int(f, (long long)(rng() % f.characteristic()));
                M.at(r, c) = v;
                M.at(c, r) = v;
            }
        mats.push_back(std::move(M));
    }
    return SymWeb(f, m, n, std::move(mats));
}

std::vector<Scalar> basis_vector(const EndoAlgebra& alg, std::size_t i) {
    std::vector<Scalar> e(alg.dim(), Scalar::zero(alg.field()));
    e[i] = Scalar::one(alg.field());
    return e;
}

} // namespace

TEST_CASE("two lines over F3: dim 2, sigma identity") {
    SymWeb w = corpus_web("two_lines_f3.swt");
    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 2);
    CHECK(count_pairs_oracle(w) == 9); // 3^dim

    // constraints force P = P' equal diagonal
    for (const auto& [P, Pp] : alg.basis()) {
        CHECK(P == Pp);
        CHECK(P.at(0, 1).is_zero());
        CHECK(P.at(1, 0).is_zero());
    }
    auto er = etale_report(alg);
    CHECK(er.commutative);
    CHECK(er.sigma_identity);
    CHECK(er.etale);
    REQUIRE(er.factor_count_r.has_value());
    CHECK(*er.factor_count_r == 2);
    REQUIRE(er.fiber_group_order.has_value());
    CHECK(*er.fiber_group_order == 2);
}

TEST_CASE("smooth conic over F3: L0 = k") {
    SymWeb w = corpus_web("conic_f3.swt");
    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 1);
    CHECK(count_pairs_oracle(w) == 3);
    auto er = etale_report(alg);
    CHECK(er.etale);
    CHECK(*er.factor_count_r == 1);
    CHECK(*er.fiber_group_order == 1);
}

TEST_CASE("conjugate lines over F3: L0 = F9") {
    SymWeb w = corpus_web("conj_lines_f3.swt");
    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 2);
    CHECK(count_pairs_oracle(w) == 9);
    auto er = etale_report(alg);
    CHECK(er.commutative);
    CHECK(er.sigma_identity);
    CHECK(er.etale);
    // one field factor of even degree: the fiber group is all of L^x/L^x2
    CHECK(*er.factor_count_r == 1);
    CHECK(*er.fiber_group_order == 2);
}

TEST_CASE("mixed factor degrees: L = F3 x F9") {
    // M(X) = diag(X2, [[X0, X1], [X1, 2 X0]]): disc = X2 (2 X0^2 + 2 X1^2),
    // one rational line plus a conjugate pair
    Field f3 = Field::prime(3);
    Mat m0(f3, 3, 3), m1(f3, 3, 3), m2(f3, 3, 3);
    m0.at(1, 1) = Scalar::one(f3);
    m0.at(2, 2) = Scalar::of_int(f3, 2);
    m1.at(1, 2) = m1.at(2, 1) = Scalar::one(f3);
    m2.at(0, 0) = Scalar::one(f3);
    SymWeb w(f3, 2, 2, {m0, m1, m2});
    CHECK(w.classify() == WebClass::GeometricallyReduced);

    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 3);
    auto er = etale_report(alg);
    CHECK(er.commutative);
    CHECK(er.sigma_identity);
    CHECK(er.etale);
    REQUIRE(er.factor_count_r.has_value());
    CHECK(*er.factor_count_r == 2);
    // one factor of odd degree, so k^x is visible in L^x/L^x2: order 2^{r-1}
    REQUIRE(er.fiber_group_order.has_value());
    CHECK(*er.fiber_group_order == 2);
    // units (x, y) with x^2 = y^2 scalar: x in F3^x, y = +-1 in F9
    CHECK(norm_kernel_order(alg, 1000000) == 2);
}

TEST_CASE("nonreduced web can have L strictly inside L0") {
    // disc = X0^2: pairs are (P, tP), sigma fixes the symmetric ones
    SymWeb w = corpus_web("square.swt");
    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 4);
    CHECK(sigma_fixed_space(alg).size() == 3);
    auto er = etale_report(alg);
    CHECK(!er.commutative);
    CHECK(!er.sigma_identity);
    CHECK(!er.etale);
}

TEST_CASE("identity element and algebra laws") {
    std::mt19937_64 rng(10101);
    for (const char* name : {"two_lines_f3.swt", "conic_f3.swt", "conj_lines_f3.swt"}) {
        SymWeb w = corpus_web(name);
        EndoAlgebra alg = endomorphism_algebra(w);
        std::size_t d = alg.dim();

        // identity behaves as identity
        for (std::size_t i = 0; i < d; ++i) {
            auto e = basis_vector(alg, i);
            CHECK(alg.mul(alg.identity_coords(), e) == e);
            CHECK(alg.mul(e, alg.identity_coords()) == e);
        }
        // associativity on basis triples
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k) {
                    auto a = basis_vector(alg, i), b = basis_vector(alg, j), c = basis_vector(alg, k);
                    CHECK(alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c)));
                }
        // sigma is an anti-automorphism with sigma^2 = id
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto a = basis_vector(alg, i), b = basis_vector(alg, j);
                CHECK(alg.sigma(alg.mul(a, b)) == alg.mul(alg.sigma(b), alg.sigma(a)));
                CHECK(alg.sigma(alg.sigma(a)) == a);
            }
        (void)rng;
    }
}

TEST_CASE("structure constants realize the matrix product") {
    // e_i o e_j as matrices must match (P_j P_i, P_i' P_j')
    for (const char* name : {"two_lines_f3.swt", "square.swt"}) {
        SymWeb w = corpus_web(name);
        EndoAlgebra alg = endomorphism_algebra(w);
        for (std::size_t i = 0; i < alg.dim(); ++i)
            for (std::size_t j = 0; j < alg.dim(); ++j) {
                auto prod = alg.structure(i, j);
                auto [P, Pp] = alg.element_pair(prod);
                const auto& [Pi, Pip] = alg.basis()[i];
                const auto& [Pj, Pjp] = alg.basis()[j];
                CHECK(P == Pj * Pi);
                CHECK(Pp == Pip * Pjp);
            }
    }
}

TEST_CASE("sigma-fixed elements give symmetric M(X) R") {
    for (const char* name : {"two_lines_f3.swt", "conj_lines_f3.swt", "square.swt"}) {
        SymWeb w = corpus_web(name);
        EndoAlgebra alg = endomorphism_algebra(w);
        for (const auto& coords : sigma_fixed_space(alg)) {
            auto [R, Rp] = alg.element_pair(coords);
            CHECK(R == Rp);
            for (int i = 0; i <= w.m(); ++i) CHECK((w.mat(i) * R).is_symmetric());
        }
    }
}

TEST_CASE("dim and etale verdict invariant under the action") {
    std::mt19937_64 rng(8080);
    Field f = Field::prime(3);
    auto random_invertible = [&](std::size_t n) {
        for (;;) {
            Mat A(f, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    A.at(i, j) = Scalar::of_int(f, (long long)(rng() % 3));
            if (!A.det().is_zero()) return A;
        }
    };
    int done = 0;
    while (done < 15) {
        SymWeb w = random_web(rng, f, 2, 1);
        if (w.discriminant().is_zero()) continue;
        EndoAlgebra alg = endomorphism_algebra(w);
        auto er = etale_report(alg);
        GroupElem g(random_invertible(3), random_invertible(2));
        EndoAlgebra alg2 = endomorphism_algebra(w.act(g));
        auto er2 = etale_report(alg2);
        CHECK(alg.dim() == alg2.dim());
        CHECK(er.commutative == er2.commutative);
        CHECK(er.etale == er2.etale);
        ++done;
    }
}

TEST_CASE("rationals: structural facts only") {
    SymWeb w = corpus_web("two_lines.swt");
    EndoAlgebra alg = endomorphism_algebra(w);
    CHECK(alg.dim() == 2);
    auto er = etale_report(alg);
    CHECK(er.commutative);
    CHECK(er.sigma_identity);
    CHECK(er.etale);
    CHECK(!er.factor_count_r.has_value());
    CHECK(!er.fiber_group_order.has_value());
    CHECK(er.fiber_group_infinite_or_unknown);
    CHECK_THROWS_AS(norm_kernel_order(alg, 1000000), DomainError);
}

TEST_CASE("norm kernel orders") {
    // L0 = k: every unit has sigma(l) l = l^2 scalar
    CHECK(norm_kernel_order(endomorphism_algebra(corpus_web("conic_f3.swt")), 1000000) == 1);
    // L0 = F3 x F3, sigma = id: x^2 = y^2 holds for all 4 units
    CHECK(norm_kernel_order(endomorphism_algebra(corpus_web("two_lines_f3.swt")), 1000000) == 2);
    // L0 = F9 over F3: {x : x^2 in F3^x} has 4 elements
    CHECK(norm_kernel_order(endomorphism_algebra(corpus_web("conj_lines_f3.swt")), 1000000) == 2);
    // cap is a hard error
    CHECK_THROWS_AS(norm_kernel_order(endomorphism_algebra(corpus_web("two_lines_f3.swt")), 4),
                    CapError);
}

TEST_CASE("unit coset representatives") {
    {
        auto reps = unit_coset_reps(endomorphism_algebra(corpus_web("conic_f3.swt")), 1000000);
        REQUIRE(reps.size() == 1);
    }
    {
        EndoAlgebra alg = endomorphism_algebra(corpus_web("two_lines_f3.swt"));
        auto reps = unit_coset_reps(alg, 1000000);
        REQUIRE(reps.size() == 2);
        // brute-force check that the representatives are in different
        // cosets: no a in k^x, u in L^x with rep1 = a u^2 rep0
        Field f3 = alg.field();
        bool same_coset = false;
        for (int ux = 0; ux < 3 && !same_coset; ++ux)
            for (int uy = 0; uy < 3 && !same_coset; ++uy) {
                std::vector<Scalar> u = {Scalar::of_int(f3, ux), Scalar::of_int(f3, uy)};
                if (!alg.is_unit(u)) continue;
                for (int a = 1; a < 3; ++a) {
                    auto cand = alg.mul(u, u);
                    for (auto& c : cand) c = c * Scalar::of_int(f3, a);
                    cand = alg.mul(cand, reps[0]);
                    if (cand == reps[1]) {
                        same_coset = true;
                        break;
                    }
                }
            }
        CHECK(!same_coset);
    }
    {
        auto reps = unit_coset_reps(endomorphism_algebra(corpus_web("two_lines_f2.swt")), 1000000);
        REQUIRE(reps.size() == 1);
    }
    {
        auto reps = unit_coset_reps(endomorphism_algebra(corpus_web("conj_lines_f3.swt")), 1000000);
        REQUIRE(reps.size() == 2);
    }
    CHECK_THROWS_AS(unit_coset_reps(endomorphism_algebra(corpus_web("square.swt")), 1000000),
                    DomainError);
}
