#include "symweb/quadauto.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "symweb/endo.hpp"
#include "symweb/modp.hpp"

namespace symweb {

namespace {

void check_char(const Field& f) {
    if (f.characteristic() == 2) throw DomainError("quadric operations require characteristic != 2");
}

// flatten the upper triangle of a raw symmetric matrix
void flatten_tri(std::size_t s, const std::uint32_t* M, std::uint32_t* out) {
    std::size_t t = 0;
    for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = r; c < s; ++c) out[t++] = M[r * s + c];
}

// Echelon data for span-membership tests mod p: rows of E are an echelon
// basis of the row space of the (m+1) x T matrix S, with E = C * S.
struct SpanSolver {
    std::uint32_t p;
    std::size_t rows, cols;
    std::vector<std::uint32_t> E, C;
    std::vector<std::size_t> pivcol;
    std::vector<std::uint32_t> inv;

    SpanSolver(std::uint32_t p_, std::size_t rows_, std::size_t cols_,
               const std::vector<std::uint32_t>& S)
        : p(p_), rows(rows_), cols(cols_), E(S), C(rows_ * rows_, 0), pivcol(rows_, 0),
          inv(modp::inverse_table(p_)) {
        for (std::size_t i = 0; i < rows; ++i) C[i * rows + i] = 1;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < cols && rank < rows; ++col) {
            std::size_t piv = rank;
            while (piv < rows && E[piv * cols + col] == 0) ++piv;
            if (piv == rows) continue;
            if (piv != rank) {
                for (std::size_t j = 0; j < cols; ++j) std::swap(E[piv * cols + j], E[rank * cols + j]);
                for (std::size_t j = 0; j < rows; ++j) std::swap(C[piv * rows + j], C[rank * rows + j]);
            }
            std::uint32_t iv = inv[E[rank * cols + col]];
            for (std::size_t j = 0; j < cols; ++j)
                E[rank * cols + j] = (std::uint32_t)((std::uint64_t)E[rank * cols + j] * iv % p);
            for (std::size_t j = 0; j < rows; ++j)
                C[rank * rows + j] = (std::uint32_t)((std::uint64_t)C[rank * rows + j] * iv % p);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == rank) continue;
                std::uint32_t c = E[i * cols + col];
                if (!c) continue;
                std::uint32_t mc = p - c;
                for (std::size_t j = 0; j < cols; ++j)
                    E[i * cols + j] =
                        (std::uint32_t)((E[i * cols + j] + (std::uint64_t)mc * E[rank * cols + j]) % p);
                for (std::size_t j = 0; j < rows; ++j)
                    C[i * rows + j] =
                        (std::uint32_t)((C[i * rows + j] + (std::uint64_t)mc * C[rank * rows + j]) % p);
            }
            pivcol[rank] = col;
            ++rank;
        }
        if (rank != rows) throw DomainError("span solver requires independent rows");
    }

    // coordinates of v in the original row basis, or false when v is outside
    // the span; work must have size cols, coords size rows
    bool coords(const std::uint32_t* v, std::uint32_t* work, std::uint32_t* coords_out) const {
        for (std::size_t j = 0; j < cols; ++j) work[j] = v[j];
        std::vector<std::uint32_t> y(rows, 0);
        for (std::size_t k = 0; k < rows; ++k) {
            std::uint32_t c = work[pivcol[k]];
            y[k] = c;
            if (!c) continue;
            std::uint32_t mc = p - c;
            for (std::size_t j = 0; j < cols; ++j)
                work[j] = (std::uint32_t)((work[j] + (std::uint64_t)mc * E[k * cols + j]) % p);
        }
        for (std::size_t j = 0; j < cols; ++j)
            if (work[j]) return false;
        // coords = y * C
        for (std::size_t i = 0; i < rows; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < rows; ++k) acc += (std::uint64_t)y[k] * C[k * rows + i];
            coords_out[i] = (std::uint32_t)(acc % p);
        }
        return true;
    }
};

std::uint32_t det_modp(std::uint32_t p, std::size_t s, std::vector<std::uint32_t> a,
                       const std::vector<std::uint32_t>& inv) {
    std::uint64_t det = 1;
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t piv = col;
        while (piv < s && a[piv * s + col] == 0) ++piv;
        if (piv == s) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < s; ++j) std::swap(a[piv * s + j], a[col * s + j]);
            det = det * (p - 1) % p;
        }
        det = det * a[col * s + col] % p;
        std::uint32_t iv = inv[a[col * s + col]];
        for (std::size_t i = col + 1; i < s; ++i) {
            std::uint32_t c = a[i * s + col];
            if (!c) continue;
            std::uint32_t f = (std::uint32_t)((std::uint64_t)c * iv % p);
            std::uint32_t mf = p - f;
            for (std::size_t j = col; j < s; ++j)
                a[i * s + j] = (std::uint32_t)((a[i * s + j] + (std::uint64_t)mf * a[col * s + j]) % p);
        }
    }
    return (std::uint32_t)det;
}

} // namespace

QuadricSystem QuadricSystem::make(const SymWeb& w) {
    check_char(w.field());
    if (w.n() <= w.m()) throw DomainError("quadric system requires n > m");
    if (w.discriminant().is_zero()) throw DomainError("zero discriminant");
    // rank of the span of the Gram matrices inside Sym_2
    std::size_t s = (std::size_t)w.n() + 1;
    std::size_t T = s * (s + 1) / 2;
    Mat rows(w.field(), w.m() + 1, T);
    for (int i = 0; i <= w.m(); ++i) {
        std::size_t t = 0;
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = r; c < s; ++c) rows.at(i, t++) = w.mat(i).at(r, c);
    }
    std::size_t span = rows.rank();
    if (span != (std::size_t)w.m() + 1)
        throw DomainError("Gram matrices do not span an (m+1)-dimensional system");
    return QuadricSystem{w, span};
}

int corank(const Mat& gram) {
    check_char(gram.field());
    if (gram.rows() != gram.cols() || !gram.is_symmetric())
        throw DomainError("corank requires a symmetric square matrix");
    return (int)(gram.rows() - gram.rank());
}

std::vector<ProjectivePoint> base_locus_points(const QuadricSystem& Q, unsigned ext_degree,
                                               const EnumOptions& opt) {
    const SymWeb& w = Q.web;
    Field f = w.field();
    if (!f.finite()) throw DomainError("point enumeration requires a finite field");
    if (ext_degree == 0) throw DomainError("extension degree must be >= 1");
    std::uint32_t p = f.characteristic();
    std::size_t s = (std::size_t)w.n() + 1;
    std::uint64_t vectors = modp::pow_sat(p, (std::uint64_t)ext_degree * s, UINT64_MAX);
    if (vectors == UINT64_MAX || vectors > effective_cap(opt, kDefaultEnumCap))
        throw CapError("point enumeration exceeds cap");

    modp::ExtField F = modp::ExtField::make(p, ext_degree);
    std::uint64_t q_ext = F.order();
    std::vector<const Mat*> grams;
    for (int i = 0; i <= w.m(); ++i) grams.push_back(&w.mat(i));

    std::vector<ProjectivePoint> points;
    std::vector<modp::ExtField::Elt> x(s, F.zero());

    // one representative per class: first nonzero coordinate equals 1
    for (std::size_t pivot = 0; pivot < s; ++pivot) {
        std::size_t free = s - pivot - 1;
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < free; ++i) count *= q_ext;
        for (std::uint64_t v = 0; v < count; ++v) {
            for (std::size_t i = 0; i < pivot; ++i) x[i] = F.zero();
            x[pivot] = F.from_base(1);
            std::uint64_t t = v;
            for (std::size_t i = pivot + 1; i < s; ++i) {
                std::uint64_t digit = t % q_ext;
                t /= q_ext;
                modp::ExtField::Elt e(ext_degree, 0);
                for (unsigned d = 0; d < ext_degree; ++d) {
                    e[d] = (std::uint32_t)(digit % p);
                    digit /= p;
                }
                x[i] = std::move(e);
            }
            bool on_locus = true;
            for (int i = 0; i <= w.m() && on_locus; ++i) {
                modp::ExtField::Elt val = F.zero();
                for (std::size_t a = 0; a < s; ++a) {
                    if (F.is_zero(x[a])) continue;
                    for (std::size_t b = 0; b < s; ++b) {
                        std::uint32_t g = grams[i]->at(a, b).residue_value();
                        if (!g || F.is_zero(x[b])) continue;
                        val = F.add(val, F.mul_base(F.mul(x[a], x[b]), g));
                    }
                }
                if (!F.is_zero(val)) on_locus = false;
            }
            if (on_locus) {
                ProjectivePoint pt;
                pt.coords.assign(x.begin(), x.end());
                points.push_back(std::move(pt));
            }
        }
    }
    return points;
}

GroupReport stabilizer_groups(const QuadricSystem& Q, const EnumOptions& opt) {
    const SymWeb& w = Q.web;
    Field f = w.field();
    if (!f.finite()) throw DomainError("stabilizer computation requires a finite field");
    check_char(f);
    std::uint32_t p = f.characteristic();
    std::size_t s = (std::size_t)w.n() + 1;
    std::size_t m1 = (std::size_t)w.m() + 1;
    std::uint64_t cap = effective_cap(opt, kDefaultStabilizerCap);
    std::uint64_t sat = cap == UINT64_MAX ? UINT64_MAX : cap + 1;
    if (modp::gl_order(p, s, sat) > cap)
        throw CapError("stabilizer search exceeds enumeration cap");

    modp::WebEnc enc = modp::encode_web(w);
    std::size_t T = s * (s + 1) / 2;
    std::vector<std::uint32_t> span_rows(m1 * T);
    for (std::size_t i = 0; i < m1; ++i) flatten_tri(s, enc.mat((int)i), span_rows.data() + i * T);
    SpanSolver span(p, m1, T, span_rows);
    auto inv = modp::inverse_table(p);

    struct Partial {
        std::uint64_t e_count = 0;
        std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> f_elems; // (P, u)
        std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> witnesses;
    };

    std::uint64_t row_space = modp::pow_sat(p, s, UINT64_MAX);
    unsigned nt = std::max(1u, opt.threads);
    if ((std::uint64_t)nt > row_space - 1) nt = (unsigned)(row_space - 1);
    std::vector<Partial> partial(nt);
    {
        std::vector<std::thread> pool;
        std::uint64_t lo = 1;
        std::uint64_t chunk = (row_space - 1) / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::uint64_t hi = (t + 1 == nt) ? row_space : lo + chunk;
            pool.emplace_back([&, lo, hi, t] {
                Partial& out = partial[t];
                std::vector<std::uint32_t> tmat(s * s), scratch(s * s), tri(T), work(T);
                std::vector<std::uint32_t> A(m1 * m1), coords(m1);
                modp::for_each_invertible(p, s, lo, hi, [&](const std::uint32_t* P) {
                    bool ok = true;
                    for (std::size_t i = 0; i < m1 && ok; ++i) {
                        modp::congruence_transform(p, s, P, enc.mat((int)i), tmat.data(),
                                                   scratch.data());
                        flatten_tri(s, tmat.data(), tri.data());
                        if (!span.coords(tri.data(), work.data(), coords.data())) {
                            ok = false;
                            break;
                        }
                        for (std::size_t r = 0; r < m1; ++r) A[r * m1 + i] = coords[r];
                    }
                    if (!ok) return true;
                    if (det_modp(p, m1, A, inv) == 0) return true;
                    ++out.e_count;
                    if (out.witnesses.size() < 3)
                        out.witnesses.emplace_back(A, std::vector<std::uint32_t>(P, P + s * s));
                    // scalar A = u I?
                    std::uint32_t u = A[0];
                    bool scalar = true;
                    for (std::size_t r = 0; r < m1 && scalar; ++r)
                        for (std::size_t c = 0; c < m1; ++c)
                            if (A[r * m1 + c] != (r == c ? u : 0u)) {
                                scalar = false;
                                break;
                            }
                    if (scalar)
                        out.f_elems.emplace_back(std::vector<std::uint32_t>(P, P + s * s), u);
                    return true;
                });
            });
            lo = hi;
        }
        for (auto& th : pool) th.join();
    }

    GroupReport rep;
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> f_elems;
    for (auto& part : partial) {
        rep.e_order += part.e_count;
        for (auto& fe : part.f_elems) f_elems.push_back(std::move(fe));
        for (auto& wt : part.witnesses) {
            if (rep.witnesses.size() >= 3) break;
            Mat A(f, m1, m1), P(f, s, s);
            for (std::size_t i = 0; i < m1; ++i)
                for (std::size_t j = 0; j < m1; ++j)
                    A.at(i, j) = Scalar::residue(f, wt.first[i * m1 + j]);
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j)
                    P.at(i, j) = Scalar::residue(f, wt.second[i * s + j]);
            rep.witnesses.emplace_back(std::move(A), std::move(P));
        }
    }
    rep.f_order = f_elems.size();
    if (rep.f_order == 0 || rep.e_order % rep.f_order != 0 || rep.e_order % (p - 1) != 0)
        throw DomainError("internal error: group orders are inconsistent");
    rep.h_order = rep.e_order / rep.f_order;
    rep.aut_order = rep.e_order / (p - 1);

    // P_Q: the scalar-P members of F_Q must be exactly {(a^2 I, a I)}
    rep.p_order = 0;
    rep.kernel_is_pq = true;
    for (const auto& [P, u] : f_elems) {
        std::uint32_t a = P[0];
        bool scalarP = true;
        for (std::size_t i = 0; i < s && scalarP; ++i)
            for (std::size_t j = 0; j < s; ++j)
                if (P[i * s + j] != (i == j ? a : 0u)) {
                    scalarP = false;
                    break;
                }
        if (!scalarP) continue;
        ++rep.p_order;
        if ((std::uint64_t)a * a % p != u) rep.kernel_is_pq = false;
    }
    if (rep.p_order != p - 1) rep.kernel_is_pq = false;

    // independent |ker Nbar| through the endomorphism algebra
    EndoAlgebra alg = endomorphism_algebra(w);
    rep.norm_kernel = norm_kernel_order(alg, effective_cap(opt, kDefaultEnumCap));

    // explicit map F_Q -> ker Nbar: P with tP M P = u M yields
    // l = (P, u P^{-1}); count images modulo k^x
    Mat B(f, 2 * s * s, alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
        const auto& [Pb, Ppb] = alg.basis()[j];
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t k = 0; k < s; ++k) {
                B.at(i * s + k, j) = Pb.at(i, k);
                B.at(s * s + i * s + k, j) = Ppb.at(i, k);
            }
    }
    std::set<std::vector<std::uint32_t>> images;
    bool map_ok = true;
    for (const auto& [Praw, u] : f_elems) {
        Mat P = Mat(f, s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) P.at(i, j) = Scalar::residue(f, Praw[i * s + j]);
        auto Pinv = P.inverse();
        if (!Pinv) throw DomainError("internal error: singular F_Q element");
        Mat Pp = Pinv->scaled(Scalar::residue(f, u));
        std::vector<Scalar> vec;
        vec.reserve(2 * s * s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) vec.push_back(P.at(i, j));
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) vec.push_back(Pp.at(i, j));
        auto coords = solve_linear(B, vec);
        if (!coords) {
            map_ok = false;
            break;
        }
        // sigma(l) l must equal u . 1
        auto norm = alg.mul(alg.sigma(*coords), *coords);
        std::vector<Scalar> u_id = alg.identity_coords();
        for (auto& c : u_id) c = c * Scalar::residue(f, u);
        if (norm != u_id) {
            map_ok = false;
            break;
        }
        // canonical representative modulo k^x: first nonzero coordinate 1
        std::size_t first = 0;
        while (first < coords->size() && (*coords)[first].is_zero()) ++first;
        Scalar scale = (*coords)[first].inverse();
        std::vector<std::uint32_t> canon;
        canon.reserve(coords->size());
        for (const auto& c : *coords) canon.push_back((c * scale).residue_value());
        images.insert(std::move(canon));
    }

    bool order_identity = rep.aut_order == rep.norm_kernel * rep.h_order;
    bool left_exact = rep.f_order == (p - 1) * rep.norm_kernel;
    bool bijection = map_ok && images.size() == rep.norm_kernel;
    rep.exactness_ok = order_identity && left_exact && bijection && rep.kernel_is_pq;

    for (const auto& [Praw, u] : f_elems) {
        Mat P(f, s, s);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) P.at(i, j) = Scalar::residue(f, Praw[i * s + j]);
        rep.f_elements.emplace_back(std::move(P), Scalar::residue(f, u));
    }
    return rep;
}

} // namespace symweb
