#include "doctest.h"

#include <random>

#include "symweb/field.hpp"

using namespace symweb;

TEST_CASE("field construction") {
    CHECK(Field::prime(7).characteristic() == 7);
    CHECK(Field::rationals().characteristic() == 0);
    CHECK(Field::prime(2).characteristic() == 2);
    CHECK(Field::prime(2147483647).characteristic() == 2147483647u); // 2^31 - 1
    CHECK_THROWS_AS(Field::prime(1), DomainError);
    CHECK_THROWS_AS(Field::prime(6), DomainError);
    CHECK_THROWS_AS(Field::prime(2147483649u), DomainError);
}

TEST_CASE("primality") {
    CHECK(is_prime_u32(2));
    CHECK(is_prime_u32(3));
    CHECK(is_prime_u32(65537));
    CHECK(!is_prime_u32(0));
    CHECK(!is_prime_u32(1));
    CHECK(!is_prime_u32(65536));
    CHECK(!is_prime_u32(2147483643u)); // 3 * 715827881
    CHECK(!is_prime_u32(25326001u));   // strong pseudoprime to bases 2, 3, 5
}

TEST_CASE("basic arithmetic") {
    Field f5 = Field::prime(5);
    CHECK(Scalar::of_int(f5, 3) * Scalar::of_int(f5, 4) == Scalar::of_int(f5, 2));
    Field q = Field::rationals();
    Scalar a = Scalar::parse(q, "2/3");
    Scalar b = Scalar::parse(q, "1/6");
    CHECK((a + b).str() == "5/6");
    Field f2 = Field::prime(2);
    CHECK(Scalar::one(f2).inverse() == Scalar::one(f2));
    CHECK_THROWS_AS(Scalar::zero(f5).inverse(), DomainError);
    CHECK_THROWS_AS(Scalar::one(f5) / Scalar::zero(f5), DomainError);
    CHECK_THROWS_AS(Scalar::one(f5) + Scalar::one(f2), DomainError);
}

TEST_CASE("enumerate elements") {
    Field f3 = Field::prime(3);
    auto elems = enumerate_elements(f3);
    REQUIRE(elems.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(elems[i] == Scalar::of_int(f3, i));
    CHECK(enumerate_elements(Field::prime(2)).size() == 2);
    CHECK_THROWS_AS(enumerate_elements(Field::rationals()), DomainError);
}

TEST_CASE("scalar text round trip") {
    Field f7 = Field::prime(7);
    for (int i = 0; i < 7; ++i) {
        Scalar s = Scalar::of_int(f7, i);
        CHECK(Scalar::parse(f7, s.str()) == s);
    }
    CHECK_THROWS_AS(Scalar::parse(f7, "7"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(f7, "-1"), ParseError);
    Field q = Field::rationals();
    CHECK(Scalar::parse(q, "-3/2").str() == "-3/2");
    CHECK(Scalar::parse(q, "0").str() == "0");
    CHECK_THROWS_AS(Scalar::parse(q, "2/4"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(q, "1/-2"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(q, "1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse(q, "a"), ParseError);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(12345);
    auto random_scalar = [&](Field f) {
        if (f.finite()) return Scalar::of_int(f, (long long)(rng() % f.characteristic()));
        long long n = (long long)(rng() % 41) - 20;
        long long d = 1 + (long long)(rng() % 9);
        return Scalar::rational(mpq_class((long)n, (long)d));
    };
    for (Field f : {Field::prime(2), Field::prime(5), Field::prime(65537), Field::rationals()}) {
        for (int iter = 0; iter < 1000; ++iter) {
            Scalar x = random_scalar(f), y = random_scalar(f), z = random_scalar(f);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            CHECK(x + (-x) == Scalar::zero(f));
            if (!x.is_zero()) CHECK(x * x.inverse() == Scalar::one(f));
        }
    }
}

TEST_CASE("fermat on enumerated elements") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
        Field f = Field::prime(p);
        for (const Scalar& x : enumerate_elements(f)) {
            Scalar acc = Scalar::one(f);
            for (std::uint32_t i = 0; i < p; ++i) acc = acc * x;
            CHECK(acc == x);
        }
    }
}

TEST_CASE("rational normalization is idempotent") {
    Scalar s = Scalar::rational(mpq_class(21, 14)); // canonicalizes to 3/2
    CHECK(s.str() == "3/2");
    CHECK(Scalar::rational(s.rational_value()) == s);
}
