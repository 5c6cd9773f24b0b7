#ifndef SYMWEB_FIELD_HPP
#define SYMWEB_FIELD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "symweb/errors.hpp"

namespace symweb {

// Base field: a prime field F_p (2 <= p < 2^31) or the rationals.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p); // throws DomainError unless p is prime and < 2^31

    // p for prime fields, 0 for Q.
    std::uint32_t characteristic() const { return p_; }
    bool finite() const { return p_ != 0; }

    bool operator==(const Field&) const = default;

    std::string str() const; // "F 3" or "Q", as in the .swt header

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_;
};

bool is_prime_u32(std::uint32_t n);

// Immutable exact field element. F_p residues are kept in [0, p-1];
// rationals are kept reduced with positive denominator.
class Scalar {
public:
    Scalar() : f_(Field::rationals()), r_(0) {} // rational zero

    static Scalar zero(Field f);
    static Scalar one(Field f);
    static Scalar of_int(Field f, long long v);
    static Scalar residue(Field f, std::uint64_t r); // prime fields only
    static Scalar rational(const mpq_class& q);      // canonicalized copy

    Field field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // throws DomainError on zero divisor
    Scalar operator-() const;
    Scalar inverse() const; // throws DomainError on zero

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::uint32_t residue_value() const; // prime fields only
    const mpq_class& rational_value() const;

    std::string str() const;
    // Strict grammar: residues "0".."p-1" for F_p; "n" or "n/d" with d > 0
    // and gcd(|n|, d) = 1 for Q.
    static Scalar parse(Field f, std::string_view text);

private:
    Scalar(Field f, std::uint64_t r) : f_(f), r_(r) {}
    void check_same(const Scalar& o) const;

    Field f_;
    std::uint64_t r_; // residue when finite
    mpq_class q_;     // value when rational
};

// All p residues in ascending order. Throws DomainError for Q.
std::vector<Scalar> enumerate_elements(Field f);

} // namespace symweb

#endif
