#include "symweb/endo.hpp"

namespace symweb {

namespace {

std::vector<Scalar> flatten_pair(const Mat& P, const Mat& Pp) {
    std::vector<Scalar> v;
    v.reserve(2 * P.rows() * P.cols());
    for (std::size_t i = 0; i < P.rows(); ++i)
        for (std::size_t j = 0; j < P.cols(); ++j) v.push_back(P.at(i, j));
    for (std::size_t i = 0; i < Pp.rows(); ++i)
        for (std::size_t j = 0; j < Pp.cols(); ++j) v.push_back(Pp.at(i, j));
    return v;
}

} // namespace

EndoAlgebra EndoAlgebra::compute(const SymWeb& web) {
    if (web.discriminant().is_zero()) throw DomainError("zero discriminant");
    Field f = web.field();
    std::size_t s = web.n() + 1;
    std::size_t nunk = 2 * s * s;

    // equations tP M_i - M_i P' = 0, entry (r,c) of each
    std::size_t neq = (std::size_t)(web.m() + 1) * s * s;
    Mat sys(f, neq, nunk);
    std::size_t eq = 0;
    for (int i = 0; i <= web.m(); ++i) {
        const Mat& M = web.mat(i);
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = 0; c < s; ++c) {
                for (std::size_t k = 0; k < s; ++k) {
                    // (tP M)_{r,c} = sum_k P_{k,r} M_{k,c}
                    sys.at(eq, k * s + r) = sys.at(eq, k * s + r) + M.at(k, c);
                    // (M P')_{r,c} = sum_k M_{r,k} P'_{k,c}
                    sys.at(eq, s * s + k * s + c) = sys.at(eq, s * s + k * s + c) - M.at(r, k);
                }
                ++eq;
            }
    }

    EndoAlgebra alg(web);
    auto kernel = kernel_basis(sys);
    if (kernel.empty()) throw DomainError("internal error: endomorphism space is zero");
    for (const auto& v : kernel) {
        Mat P(f, s, s), Pp(f, s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) {
                P.at(i, j) = v[i * s + j];
                Pp.at(i, j) = v[s * s + i * s + j];
            }
        alg.basis_.emplace_back(std::move(P), std::move(Pp));
    }
    std::size_t dim = alg.basis_.size();

    // column matrix of basis vectors, used to express elements in coordinates
    Mat B(f, nunk, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        auto v = flatten_pair(alg.basis_[j].first, alg.basis_[j].second);
        for (std::size_t i = 0; i < nunk; ++i) B.at(i, j) = v[i];
    }
    auto coords_of = [&](const Mat& P, const Mat& Pp, const char* what) {
        auto x = solve_linear(B, flatten_pair(P, Pp));
        if (!x) throw DomainError(std::string("closure failure: ") + what);
        return *x;
    };

    alg.identity_ = coords_of(Mat::identity(f, s), Mat::identity(f, s), "identity not in span");

    alg.structure_.reserve(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const auto& [Pi, Pip] = alg.basis_[i];
            const auto& [Pj, Pjp] = alg.basis_[j];
            // (P_i,P_i') o (P_j,P_j') = (P_j P_i, P_i' P_j')
            alg.structure_.push_back(coords_of(Pj * Pi, Pip * Pjp, "basis product not in span"));
        }

    alg.sigma_ = Mat(f, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        auto x = coords_of(alg.basis_[j].second, alg.basis_[j].first, "sigma image not in span");
        for (std::size_t i = 0; i < dim; ++i) alg.sigma_.at(i, j) = x[i];
    }
    // involution sanity
    if (!(alg.sigma_ * alg.sigma_ == Mat::identity(f, dim)))
        throw DomainError("internal error: sigma is not an involution");
    return alg;
}

std::vector<Scalar> EndoAlgebra::mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::size_t d = dim();
    std::vector<Scalar> z(d, Scalar::zero(field()));
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (y[j].is_zero()) continue;
            Scalar c = x[i] * y[j];
            const auto& sc = structure(i, j);
            for (std::size_t k = 0; k < d; ++k)
                z[k] = z[k] + c * sc[k];
        }
    }
    return z;
}

std::vector<Scalar> EndoAlgebra::power(const std::vector<Scalar>& x, std::uint64_t e) const {
    std::vector<Scalar> acc = identity_;
    std::vector<Scalar> base = x;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<Scalar> EndoAlgebra::sigma(const std::vector<Scalar>& x) const {
    std::size_t d = dim();
    std::vector<Scalar> z(d, Scalar::zero(field()));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            z[i] = z[i] + sigma_.at(i, j) * x[j];
    return z;
}

Mat EndoAlgebra::regular_representation(const std::vector<Scalar>& x) const {
    std::size_t d = dim();
    Mat R(field(), d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            const auto& sc = structure(i, j);
            for (std::size_t k = 0; k < d; ++k)
                R.at(k, j) = R.at(k, j) + x[i] * sc[k];
        }
    }
    return R;
}

bool EndoAlgebra::is_unit(const std::vector<Scalar>& x) const {
    return !regular_representation(x).det().is_zero();
}

std::pair<Mat, Mat> EndoAlgebra::element_pair(const std::vector<Scalar>& x) const {
    Field f = field();
    std::size_t s = matrix_size();
    Mat P(f, s, s), Pp(f, s, s);
    for (std::size_t b = 0; b < dim(); ++b) {
        if (x[b].is_zero()) continue;
        P = P + basis_[b].first.scaled(x[b]);
        Pp = Pp + basis_[b].second.scaled(x[b]);
    }
    return {P, Pp};
}

std::vector<std::vector<Scalar>> sigma_fixed_space(const EndoAlgebra& alg) {
    Mat A = alg.sigma_matrix() - Mat::identity(alg.field(), alg.dim());
    return kernel_basis(A);
}

namespace {

// number of cyclotomic-free factor degrees of the etale algebra over F_q:
// kj = dim ker(Frob^j - id) equals sum_i gcd(j, d_i), so r = k1 and the
// count of even-degree factors is k2 - k1.
struct FrobeniusShape {
    int r;
    int even_degree_factors;
};

FrobeniusShape frobenius_shape(const EndoAlgebra& alg) {
    Field f = alg.field();
    std::size_t d = alg.dim();
    Mat F(f, d, d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Scalar> e(d, Scalar::zero(f));
        e[j] = Scalar::one(f);
        auto img = alg.power(e, f.characteristic());
        for (std::size_t i = 0; i < d; ++i) F.at(i, j) = img[i];
    }
    Mat I = Mat::identity(f, d);
    int k1 = (int)kernel_basis(F - I).size();
    int k2 = (int)kernel_basis(F * F - I).size();
    return {k1, k2 - k1};
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t e, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

std::uint64_t encode(const std::vector<Scalar>& x, std::uint64_t q) {
    std::uint64_t v = 0;
    for (std::size_t i = x.size(); i-- > 0;) v = v * q + x[i].residue_value();
    return v;
}

std::vector<Scalar> decode(std::uint64_t v, std::size_t d, Field f) {
    std::vector<Scalar> x;
    x.reserve(d);
    std::uint64_t q = f.characteristic();
    for (std::size_t i = 0; i < d; ++i) {
        x.push_back(Scalar::residue(f, (std::uint32_t)(v % q)));
        v /= q;
    }
    return x;
}

} // namespace

EtaleReport etale_report(const EndoAlgebra& alg) {
    Field f = alg.field();
    std::size_t d = alg.dim();
    EtaleReport rep;

    rep.commutative = true;
    for (std::size_t i = 0; i < d && rep.commutative; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (alg.structure(i, j) != alg.structure(j, i)) {
                rep.commutative = false;
                break;
            }

    rep.sigma_identity = alg.sigma_matrix() == Mat::identity(f, d);

    if (rep.commutative) {
        // trace form of the regular representation
        std::vector<Scalar> tr;
        tr.reserve(d);
        for (std::size_t k = 0; k < d; ++k) {
            Scalar t = Scalar::zero(f);
            for (std::size_t j = 0; j < d; ++j) t = t + alg.structure(k, j)[j];
            tr.push_back(t);
        }
        Mat T(f, d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Scalar t = Scalar::zero(f);
                const auto& sc = alg.structure(i, j);
                for (std::size_t k = 0; k < d; ++k) t = t + sc[k] * tr[k];
                T.at(i, j) = t;
            }
        rep.etale = !T.det().is_zero();
    }

    if (f.finite()) {
        if (rep.etale) {
            auto shape = frobenius_shape(alg);
            rep.factor_count_r = shape.r;
            if (f.characteristic() == 2) {
                rep.fiber_group_order = 1;
            } else {
                // |L^x / k^x L^x2| = 2^r when every factor has even degree
                // (k^x then consists of squares of L), else 2^{r-1}
                int exponent = (shape.even_degree_factors == shape.r) ? shape.r : shape.r - 1;
                rep.fiber_group_order = std::uint64_t(1) << exponent;
            }
        }
    } else {
        if (d == 1) rep.fiber_group_order = 1;
        else rep.fiber_group_infinite_or_unknown = true;
    }
    return rep;
}

std::uint64_t norm_kernel_order(const EndoAlgebra& alg, std::uint64_t max_enum) {
    Field f = alg.field();
    if (!f.finite()) throw DomainError("norm kernel order requires a finite field");
    std::uint64_t q = f.characteristic();
    std::size_t d = alg.dim();
    std::uint64_t total = checked_pow(q, d, max_enum);
    if (total > max_enum) throw CapError("norm kernel enumeration exceeds cap");

    const auto& id = alg.identity_coords();
    std::size_t pivot = 0;
    while (id[pivot].is_zero()) ++pivot;

    std::uint64_t count = 0;
    for (std::uint64_t v = 0; v < total; ++v) {
        auto l = decode(v, d, f);
        if (!alg.is_unit(l)) continue;
        auto norm = alg.mul(alg.sigma(l), l);
        Scalar a = norm[pivot] / id[pivot];
        if (a.is_zero()) continue;
        bool scalar = true;
        for (std::size_t k = 0; k < d; ++k)
            if (!(norm[k] == a * id[k])) { scalar = false; break; }
        if (scalar) ++count;
    }
    if (count % (q - 1) != 0)
        throw DomainError("internal error: norm kernel count not divisible by q-1");
    return count / (q - 1);
}

std::vector<std::vector<Scalar>> unit_coset_reps(const EndoAlgebra& alg, std::uint64_t max_enum) {
    Field f = alg.field();
    if (!f.finite()) throw DomainError("unit coset enumeration requires a finite field");
    auto rep = etale_report(alg);
    if (!(rep.commutative && rep.sigma_identity && rep.etale))
        throw DomainError("unit cosets require the commutative etale sigma=id regime");
    std::uint64_t q = f.characteristic();
    std::size_t d = alg.dim();
    std::uint64_t total = checked_pow(q, d, max_enum);
    if (total > max_enum) throw CapError("unit enumeration exceeds cap");

    std::vector<std::uint64_t> units;
    for (std::uint64_t v = 0; v < total; ++v) {
        auto l = decode(v, d, f);
        if (alg.is_unit(l)) units.push_back(v);
    }

    // subgroup k^x . {u^2}
    std::vector<std::uint64_t> subgroup;
    {
        std::vector<bool> seen(total, false);
        for (auto v : units) {
            auto u2 = alg.mul(decode(v, d, f), decode(v, d, f));
            for (std::uint32_t a = 1; a < q; ++a) {
                std::vector<Scalar> s = u2;
                Scalar as = Scalar::residue(f, a);
                for (auto& c : s) c = c * as;
                std::uint64_t e = encode(s, q);
                if (!seen[e]) {
                    seen[e] = true;
                    subgroup.push_back(e);
                }
            }
        }
    }

    std::vector<std::vector<Scalar>> reps;
    std::vector<bool> covered(total, false);
    for (auto v : units) {
        if (covered[v]) continue;
        auto l = decode(v, d, f);
        reps.push_back(l);
        for (auto s : subgroup) {
            auto prod = alg.mul(l, decode(s, d, f));
            covered[encode(prod, q)] = true;
        }
        if (!covered[v]) throw DomainError("internal error: coset does not contain its representative");
    }

    if (rep.fiber_group_order && reps.size() != *rep.fiber_group_order)
        throw DomainError("internal error: coset count disagrees with fiber group order");
    return reps;
}

} // namespace symweb
