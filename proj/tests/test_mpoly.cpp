#include "doctest.h"

#include <random>

#include "symweb/mpoly.hpp"

using namespace symweb;

namespace {

MPoly parse_q(std::size_t nvars, const char* text) {
    return MPoly::parse(Field::rationals(), nvars, text);
}

MPoly random_poly(std::mt19937_64& rng, Field f, std::size_t nvars, int max_deg, int max_terms) {
    MPoly p(f, nvars);
    int terms = 1 + (int)(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(nvars, 0);
        int deg = (int)(rng() % (max_deg + 1));
        for (int d = 0; d < deg; ++d) e[rng() % nvars]++;
        Scalar c = f.finite() ? Scalar::of_int(f, (long long)(rng() % f.characteristic()))
                              : Scalar::of_int(f, (long long)(rng() % 9) - 4);
        p.add_term(e, c);
    }
    return p;
}

MPoly random_nonzero(std::mt19937_64& rng, Field f, std::size_t nvars, int max_deg, int max_terms) {
    for (;;) {
        MPoly p = random_poly(rng, f, nvars, max_deg, max_terms);
        if (!p.is_zero()) return p;
    }
}

} // namespace

TEST_CASE("arithmetic basics") {
    auto f = parse_q(2, "X0 + X1");
    auto g = parse_q(2, "X0 - X1");
    CHECK(f * g == parse_q(2, "X0^2 - X1^2"));

    Field q = Field::rationals();
    Mat id = Mat::identity(q, 2);
    auto prod = parse_q(2, "X0*X1");
    CHECK(prod.substitute_linear(id) == prod);

    Mat swap(q, 2, 2);
    swap.at(0, 1) = Scalar::one(q);
    swap.at(1, 0) = Scalar::one(q);
    CHECK(parse_q(2, "X0^2").substitute_linear(swap) == parse_q(2, "X1^2"));

    Mat sing(q, 2, 2);
    sing.at(0, 0) = Scalar::one(q);
    CHECK_THROWS_AS(prod.substitute_linear(sing), DomainError);
}

TEST_CASE("homogeneity") {
    auto h = parse_q(3, "X0*X1 + X2^2").homogeneity();
    CHECK(h.kind == MPoly::Homogeneity::Homogeneous);
    CHECK(h.degree == 2);
    CHECK(parse_q(2, "X0 + X1^2").homogeneity().kind == MPoly::Homogeneity::Inhomogeneous);
    CHECK(MPoly(Field::rationals(), 2).homogeneity().kind == MPoly::Homogeneity::Zero);
}

TEST_CASE("partial derivatives") {
    CHECK(parse_q(2, "X0^2*X1").derivative(0) == parse_q(2, "2*X0*X1"));
    Field f2 = Field::prime(2);
    auto sq = MPoly::parse(f2, 2, "X0^2");
    CHECK(sq.derivative(0).is_zero());
    CHECK(parse_q(3, "X0*X1").derivative(2).is_zero());
    CHECK_THROWS_AS(parse_q(2, "X0").derivative(5), DomainError);
}

TEST_CASE("gcd examples") {
    CHECK(poly_gcd(parse_q(2, "X0^2*X1"), parse_q(2, "X0*X1^2")) == parse_q(2, "X0*X1"));

    // gcd(X0^2 - X1^2, X0 - X1) = X0 - X1, checked against the exact
    // division X0^2 - X1^2 = (X0 - X1)(X0 + X1)
    auto f = parse_q(2, "X0^2 - X1^2");
    auto g = parse_q(2, "X0 - X1");
    auto quotient = divide_exact(f, g);
    REQUIRE(quotient.has_value());
    CHECK(*quotient == parse_q(2, "X0 + X1"));
    CHECK(poly_gcd(f, g) == g);

    // gcd with zero normalizes the leading coefficient to 1
    auto h = parse_q(2, "2*X0 + 2*X1");
    CHECK(poly_gcd(h, MPoly(Field::rationals(), 2)) == parse_q(2, "X0 + X1"));
}

TEST_CASE("squarefreeness") {
    CHECK(is_geometrically_squarefree(parse_q(2, "X0*X1")));
    Field f3 = Field::prime(3);
    CHECK(!is_geometrically_squarefree(MPoly::parse(f3, 2, "X0^2")));

    // over F_2 the partials of X0^2 + X1 X2 are (0, X2, X1); their gcd with
    // the polynomial is 1
    Field f2 = Field::prime(2);
    auto f = MPoly::parse(f2, 3, "X0^2 + X1*X2");
    MPoly g(f);
    for (std::size_t i = 0; i < 3; ++i) g = poly_gcd(g, f.derivative(i));
    CHECK(g.total_degree() == 0);
    CHECK(is_geometrically_squarefree(f));

    // p-th power: all partials vanish, gcd is f itself
    CHECK(!is_geometrically_squarefree(MPoly::parse(f2, 2, "X0^2 + X1^2")));

    CHECK_THROWS_AS(is_geometrically_squarefree(MPoly(f2, 2)), DomainError);
    CHECK_THROWS_AS(is_geometrically_squarefree(parse_q(2, "X0 + 1")), DomainError);
}

TEST_CASE("multiplicity examples") {
    CHECK(multiplicity(parse_q(2, "X0^2*X1"), parse_q(2, "X0")) == 2);
    CHECK(multiplicity(parse_q(2, "X0*X1"), parse_q(2, "X0 + X1")) == 0);
    Field f5 = Field::prime(5);
    auto f = MPoly::parse(f5, 3, "X0 + X1").pow(3) * MPoly::parse(f5, 3, "X2");
    CHECK(multiplicity(f, MPoly::parse(f5, 3, "X0 + X1")) == 3);
    CHECK_THROWS_AS(multiplicity(MPoly(f5, 2), MPoly::parse(f5, 2, "X0")), DomainError);
    CHECK_THROWS_AS(multiplicity(MPoly::parse(f5, 2, "X0"), MPoly::parse(f5, 2, "3")), DomainError);
}

TEST_CASE("proportional") {
    Field f5 = Field::prime(5);
    auto u = proportional(MPoly::parse(f5, 2, "2*X0*X1"), MPoly::parse(f5, 2, "X0*X1"));
    REQUIRE(u.has_value());
    CHECK(*u == Scalar::of_int(f5, 2));
    CHECK(!proportional(parse_q(3, "X0*X1"), parse_q(3, "X0*X2")).has_value());
    auto v = proportional(parse_q(2, "3/2*X0^2 - 3/2*X1^2"), parse_q(2, "X0^2 - X1^2"));
    REQUIRE(v.has_value());
    CHECK(v->str() == "3/2");
    auto w = proportional(MPoly(f5, 2), MPoly(f5, 2));
    REQUIRE(w.has_value());
    CHECK(w->is_one());
    CHECK(!proportional(MPoly(f5, 2), MPoly::parse(f5, 2, "X0")).has_value());
}

TEST_CASE("text round trip") {
    Field f3 = Field::prime(3);
    std::mt19937_64 rng(777);
    for (int iter = 0; iter < 200; ++iter) {
        for (Field f : {f3, Field::rationals()}) {
            MPoly p = random_poly(rng, f, 3, 4, 5);
            CHECK(MPoly::parse(f, 3, p.str()) == p);
        }
    }
    CHECK(MPoly(f3, 2).str() == "0");
    CHECK(MPoly::parse(f3, 2, " X0 ^ 2  + 2 * X1 ").str() == "X0^2 + 2*X1");
    CHECK_THROWS_AS(MPoly::parse(f3, 2, "X5"), ParseError);
    CHECK_THROWS_AS(MPoly::parse(f3, 2, "X0 +"), ParseError);
    CHECK_THROWS_AS(MPoly::parse(f3, 2, ""), ParseError);
    CHECK_THROWS_AS(MPoly::parse(f3, 2, "4*X0"), ParseError);
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(31337);
    for (Field f : {Field::prime(2), Field::prime(5), Field::rationals()}) {
        for (int iter = 0; iter < 120; ++iter) {
            MPoly a = random_poly(rng, f, 2, 3, 4);
            MPoly b = random_poly(rng, f, 2, 3, 4);
            MPoly c = random_poly(rng, f, 2, 3, 4);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
        }
    }
}

TEST_CASE("degree of products") {
    std::mt19937_64 rng(999);
    for (Field f : {Field::prime(3), Field::rationals()}) {
        for (int iter = 0; iter < 100; ++iter) {
            MPoly a = random_nonzero(rng, f, 3, 3, 4);
            MPoly b = random_nonzero(rng, f, 3, 3, 4);
            CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
        }
    }
}

TEST_CASE("products with a square factor are never squarefree") {
    std::mt19937_64 rng(4242);
    for (Field f : {Field::prime(3), Field::prime(5)}) {
        int done = 0;
        while (done < 40) {
            MPoly a = random_nonzero(rng, f, 3, 2, 3);
            MPoly b = random_nonzero(rng, f, 3, 2, 3);
            if (a.is_constant() || b.is_constant()) continue;
            MPoly prod = a * b * b;
            auto h = prod.homogeneity();
            if (h.kind != MPoly::Homogeneity::Homogeneous || h.degree < 1) continue;
            CHECK(!is_geometrically_squarefree(prod));
            ++done;
        }
    }
}

TEST_CASE("gcd contains common factors") {
    // c divides gcd(a c, b c) exactly
    std::mt19937_64 rng(13579);
    for (Field f : {Field::prime(3), Field::rationals()}) {
        int done = 0;
        while (done < 25) {
            MPoly a = random_nonzero(rng, f, 3, 3, 3);
            MPoly b = random_nonzero(rng, f, 3, 3, 3);
            MPoly c = random_nonzero(rng, f, 3, 3, 3);
            if (c.is_constant()) continue;
            MPoly g = poly_gcd(a * c, b * c);
            CHECK(divide_exact(g, c).has_value());
            // and the gcd divides both products
            CHECK(divide_exact(a * c, g).has_value());
            CHECK(divide_exact(b * c, g).has_value());
            ++done;
        }
    }
}

TEST_CASE("multiplicity of g^e h") {
    std::mt19937_64 rng(2024);
    for (Field f : {Field::prime(5), Field::rationals()}) {
        int done = 0;
        while (done < 40) {
            MPoly g = random_nonzero(rng, f, 2, 2, 3);
            MPoly h = random_nonzero(rng, f, 2, 2, 3);
            if (g.is_constant()) continue;
            if (divide_exact(h, g)) continue; // need g not dividing h
            int e = (int)(rng() % 5);
            CHECK(multiplicity(g.pow(e) * h, g) == e);
            ++done;
        }
    }
}

TEST_CASE("substitution is a right action") {
    std::mt19937_64 rng(555);
    Field f = Field::prime(5);
    auto random_invertible = [&](std::size_t n) {
        for (;;) {
            Mat A(f, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    A.at(i, j) = Scalar::of_int(f, (long long)(rng() % 5));
            if (!A.det().is_zero()) return A;
        }
    };
    for (int iter = 0; iter < 60; ++iter) {
        MPoly p = random_poly(rng, f, 3, 3, 4);
        Mat A = random_invertible(3);
        Mat B = random_invertible(3);
        CHECK(p.substitute_linear(A * B) == p.substitute_linear(A).substitute_linear(B));
    }
}

TEST_CASE("substitution preserves homogeneity and degree") {
    std::mt19937_64 rng(9009);
    Field f = Field::prime(5);
    auto random_invertible = [&](std::size_t n) {
        for (;;) {
            Mat A(f, n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    A.at(i, j) = Scalar::of_int(f, (long long)(rng() % 5));
            if (!A.det().is_zero()) return A;
        }
    };
    for (int iter = 0; iter < 40; ++iter) {
        // random homogeneous polynomial of degree d
        int d = 1 + (int)(rng() % 4);
        MPoly p(f, 3);
        for (int t = 0; t < 4; ++t) {
            ExpVec e(3, 0);
            for (int k = 0; k < d; ++k) e[rng() % 3]++;
            p.add_term(e, Scalar::of_int(f, (long long)(rng() % 5)));
        }
        if (p.is_zero()) continue;
        MPoly moved = p.substitute_linear(random_invertible(3));
        auto h = moved.homogeneity();
        CHECK(h.kind == MPoly::Homogeneity::Homogeneous);
        CHECK(h.degree == d);
    }
}
