#include "symweb/field.hpp"

#include <charconv>

namespace symweb {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (unsigned __int128)a * b % m;
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

// Deterministic Miller-Rabin; bases {2,3,5,7} suffice below 3.2e9, which
// covers the whole p < 2^31 range.
bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint32_t a : {2u, 3u, 5u, 7u}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 31))
        throw DomainError("field characteristic must be < 2^31");
    if (!is_prime_u32(p))
        throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::string Field::str() const {
    return finite() ? "F " + std::to_string(p_) : std::string("Q");
}

Scalar Scalar::zero(Field f) {
    return Scalar(f, 0);
}

Scalar Scalar::one(Field f) {
    if (f.finite()) return Scalar(f, 1);
    Scalar s(f, 0);
    s.q_ = 1;
    return s;
}

Scalar Scalar::of_int(Field f, long long v) {
    if (f.finite()) {
        long long p = f.characteristic();
        long long r = v % p;
        if (r < 0) r += p;
        return Scalar(f, (std::uint64_t)r);
    }
    Scalar s(f, 0);
    s.q_ = mpq_class((long)v); // long long fits: callers stay in long range
    return s;
}

Scalar Scalar::residue(Field f, std::uint64_t r) {
    if (!f.finite()) throw DomainError("residue scalar requires a prime field");
    return Scalar(f, r % f.characteristic());
}

Scalar Scalar::rational(const mpq_class& q) {
    Scalar s(Field::rationals(), 0);
    s.q_ = q;
    s.q_.canonicalize();
    return s;
}

bool Scalar::is_zero() const {
    return f_.finite() ? r_ == 0 : q_ == 0;
}

bool Scalar::is_one() const {
    return f_.finite() ? r_ == 1 % f_.characteristic() : q_ == 1;
}

void Scalar::check_same(const Scalar& o) const {
    if (!(f_ == o.f_)) throw DomainError("field mismatch");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    if (f_.finite()) return Scalar(f_, (r_ + o.r_) % f_.characteristic());
    Scalar s(f_, 0);
    s.q_ = q_ + o.q_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    if (f_.finite()) {
        std::uint64_t p = f_.characteristic();
        return Scalar(f_, (r_ + p - o.r_) % p);
    }
    Scalar s(f_, 0);
    s.q_ = q_ - o.q_;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    if (f_.finite()) return Scalar(f_, r_ * o.r_ % f_.characteristic());
    Scalar s(f_, 0);
    s.q_ = q_ * o.q_;
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    if (f_.finite()) {
        std::uint64_t p = f_.characteristic();
        return Scalar(f_, (p - r_) % p);
    }
    Scalar s(f_, 0);
    s.q_ = -q_;
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    if (f_.finite()) {
        // extended Euclid on (r, p)
        std::int64_t p = f_.characteristic();
        std::int64_t a = (std::int64_t)r_, b = p, x0 = 1, x1 = 0;
        while (b) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        x0 %= p;
        if (x0 < 0) x0 += p;
        return Scalar(f_, (std::uint64_t)x0);
    }
    Scalar s(f_, 0);
    s.q_ = 1 / q_;
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(f_ == o.f_)) return false;
    return f_.finite() ? r_ == o.r_ : q_ == o.q_;
}

std::uint32_t Scalar::residue_value() const {
    if (!f_.finite()) throw DomainError("not a prime-field scalar");
    return (std::uint32_t)r_;
}

const mpq_class& Scalar::rational_value() const {
    if (f_.finite()) throw DomainError("not a rational scalar");
    return q_;
}

std::string Scalar::str() const {
    if (f_.finite()) return std::to_string(r_);
    return q_.get_str();
}

Scalar Scalar::parse(Field f, std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar");
    if (f.finite()) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw ParseError("malformed residue '" + std::string(text) + "'");
        if (v >= f.characteristic())
            throw ParseError("residue '" + std::string(text) + "' out of range for " + f.str());
        return Scalar(f, v);
    }
    // "n" or "n/d", d > 0, already in lowest terms
    auto slash = text.find('/');
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string num(text.substr(0, slash));
    if (!is_int(num)) throw ParseError("malformed rational '" + std::string(text) + "'");
    Scalar s(f, 0);
    if (slash == std::string_view::npos) {
        s.q_ = mpq_class(mpz_class(num));
        return s;
    }
    std::string den(text.substr(slash + 1));
    if (!is_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class n(num), d(den);
    if (d <= 0) throw ParseError("denominator must be positive in '" + std::string(text) + "'");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw ParseError("rational '" + std::string(text) + "' is not in lowest terms");
    s.q_ = mpq_class(n, d);
    s.q_.canonicalize();
    return s;
}

std::vector<Scalar> enumerate_elements(Field f) {
    if (!f.finite()) throw DomainError("rationals are not enumerable");
    std::vector<Scalar> out;
    out.reserve(f.characteristic());
    for (std::uint32_t r = 0; r < f.characteristic(); ++r)
        out.push_back(Scalar::residue(f, r));
    return out;
}

} // namespace symweb
