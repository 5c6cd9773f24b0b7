#ifndef SYMWEB_MPOLY_HPP
#define SYMWEB_MPOLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symweb/field.hpp"
#include "symweb/linalg.hpp"

namespace symweb {

using ExpVec = std::vector<std::uint32_t>;

// Descending lexicographic order with X0 > X1 > ... (leading term first).
struct LexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

// Sparse exact polynomial in X0..X{nvars-1}. No zero coefficients are stored;
// the term map iterates in canonical order.
class MPoly {
public:
    MPoly(Field f, std::size_t nvars);

    static MPoly constant(Field f, std::size_t nvars, const Scalar& c);
    static MPoly variable(Field f, std::size_t nvars, std::size_t i);
    static MPoly monomial(Field f, std::size_t nvars, const ExpVec& e, const Scalar& c);

    Field field() const { return f_; }
    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ExpVec, Scalar, LexDesc>& terms() const { return terms_; }

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly scaled(const Scalar& c) const;
    MPoly pow(std::uint32_t e) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    // f(AX) with (AX)_i = sum_j A(i,j) X_j; A must be square of size nvars
    // and invertible.
    MPoly substitute_linear(const Mat& A) const;

    struct Homogeneity {
        enum Kind { Zero, Homogeneous, Inhomogeneous } kind;
        long degree; // valid when Homogeneous
    };
    Homogeneity homogeneity() const;

    MPoly derivative(std::size_t var) const; // formal partial, reduced in the field

    long total_degree() const; // -1 for the zero polynomial
    Scalar leading_coefficient() const; // of the canonical-order leading term; zero poly -> 0
    bool is_constant() const { return total_degree() <= 0; }

    std::string str() const;
    static MPoly parse(Field f, std::size_t nvars, std::string_view text);

    void add_term(const ExpVec& e, const Scalar& c); // accumulate, dropping zeros

private:
    void check_compatible(const MPoly& o) const;

    Field f_;
    std::size_t nvars_;
    std::map<ExpVec, Scalar, LexDesc> terms_;
};

// Exact multivariate division: q with f = q*g, if it exists.
std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g);

// Primitive-PRS gcd, normalized to leading coefficient 1; gcd(f, 0) = f made monic.
MPoly poly_gcd(const MPoly& f, const MPoly& g);

// Largest e with g^e | f. Requires f != 0 and g non-constant.
int multiplicity(const MPoly& f, const MPoly& g);

// gcd-with-all-partials criterion; valid over F_p and Q (perfect fields).
// Requires f nonzero and homogeneous of degree >= 1.
bool is_geometrically_squarefree(const MPoly& f);

// u with f = u*g for a unit u; (0,0) -> 1; absent otherwise.
std::optional<Scalar> proportional(const MPoly& f, const MPoly& g);

} // namespace symweb

#endif
