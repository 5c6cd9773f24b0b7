#ifndef SYMWEB_ENDO_HPP
#define SYMWEB_ENDO_HPP

#include <optional>
#include <utility>

#include "symweb/web.hpp"

namespace symweb {

// Structure-constant presentation of L_0 = {(P, P') : tP M_i = M_i P'},
// with product (P1,P1') o (P2,P2') = (P2 P1, P1' P2') and the involution
// sigma swapping the pair. Elements are coordinate vectors in the basis.
class EndoAlgebra {
public:
    static EndoAlgebra compute(const SymWeb& web); // requires disc(web) != 0

    const SymWeb& web() const { return web_; }
    Field field() const { return web_.field(); }
    std::size_t dim() const { return basis_.size(); }
    std::size_t matrix_size() const { return web_.n() + 1; }
    const std::vector<std::pair<Mat, Mat>>& basis() const { return basis_; }
    const std::vector<Scalar>& identity_coords() const { return identity_; }
    const Mat& sigma_matrix() const { return sigma_; }
    const std::vector<Scalar>& structure(std::size_t i, std::size_t j) const {
        return structure_[i * basis_.size() + j];
    }

    std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const;
    std::vector<Scalar> power(const std::vector<Scalar>& x, std::uint64_t e) const;
    std::vector<Scalar> sigma(const std::vector<Scalar>& x) const;
    Mat regular_representation(const std::vector<Scalar>& x) const;
    bool is_unit(const std::vector<Scalar>& x) const;
    // the pair (P, P') of an element given by coordinates
    std::pair<Mat, Mat> element_pair(const std::vector<Scalar>& x) const;

private:
    EndoAlgebra(SymWeb web) : web_(std::move(web)), sigma_(web_.field(), 0, 0) {}

    SymWeb web_;
    std::vector<std::pair<Mat, Mat>> basis_;
    std::vector<Scalar> identity_;
    std::vector<std::vector<Scalar>> structure_; // [i*dim+j] = coords of e_i o e_j
    Mat sigma_;
};

inline EndoAlgebra endomorphism_algebra(const SymWeb& w) { return EndoAlgebra::compute(w); }

// Basis (coordinate vectors) of L = ker(sigma - id).
std::vector<std::vector<Scalar>> sigma_fixed_space(const EndoAlgebra& alg);

struct EtaleReport {
    bool commutative = false;
    bool sigma_identity = false;
    bool etale = false;
    std::optional<int> factor_count_r;              // finite field, etale only
    std::optional<std::uint64_t> fiber_group_order; // |L^x / k^x L^x2| when finite
    bool fiber_group_infinite_or_unknown = false;   // Q with dim > 1
};

EtaleReport etale_report(const EndoAlgebra& alg);

// |{l in L_0^x : sigma(l) l in k^x . 1}| / (q-1). Finite fields only.
std::uint64_t norm_kernel_order(const EndoAlgebra& alg, std::uint64_t max_enum);

// Coset representatives of L^x / k^x L^x2, each the minimal element of its
// coset in the canonical encoding, ascending. Requires the commutative
// sigma = id etale regime over a finite field.
std::vector<std::vector<Scalar>> unit_coset_reps(const EndoAlgebra& alg, std::uint64_t max_enum);

} // namespace symweb

#endif
