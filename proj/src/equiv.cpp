#include "symweb/equiv.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>
#include <thread>

#include "symweb/modp.hpp"

namespace symweb {

namespace {

using modp::WebEnc;

struct TriShape {
    std::uint32_t p;
    int m, n;
    std::size_t s, T, D;
    std::vector<std::pair<std::size_t, std::size_t>> tri;
};

TriShape tri_shape(std::uint32_t p, int m, int n) {
    TriShape sh;
    sh.p = p;
    sh.m = m;
    sh.n = n;
    sh.s = (std::size_t)n + 1;
    for (std::size_t r = 0; r < sh.s; ++r)
        for (std::size_t c = r; c < sh.s; ++c) sh.tri.emplace_back(r, c);
    sh.T = sh.tri.size();
    sh.D = (std::size_t)(m + 1) * sh.T;
    return sh;
}

WebEnc decode_code(const TriShape& sh, std::uint64_t code) {
    WebEnc e;
    e.p = sh.p;
    e.m = sh.m;
    e.n = sh.n;
    e.a.assign((std::size_t)(sh.m + 1) * sh.s * sh.s, 0);
    for (int i = 0; i <= sh.m; ++i) {
        std::uint32_t* M = e.mat(i);
        for (const auto& [r, c] : sh.tri) {
            std::uint32_t d = (std::uint32_t)(code % sh.p);
            code /= sh.p;
            M[r * sh.s + c] = d;
            M[c * sh.s + r] = d;
        }
    }
    return e;
}

std::uint64_t code_of_enc(const TriShape& sh, const WebEnc& e) {
    std::uint64_t code = 0;
    std::uint64_t weight = 1;
    for (int i = 0; i <= sh.m; ++i) {
        const std::uint32_t* M = e.mat(i);
        for (const auto& [r, c] : sh.tri) {
            code += weight * M[r * sh.s + c];
            weight *= sh.p;
        }
    }
    return code;
}

Mat raw_to_mat(Field f, std::size_t s, const std::uint32_t* a) {
    Mat M(f, s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) M.at(i, j) = Scalar::residue(f, a[i * s + j]);
    return M;
}

void check_comparable(const SymWeb& M, const SymWeb& Mp) {
    if (!(M.field() == Mp.field())) throw DomainError("webs over different fields");
    if (M.m() != Mp.m() || M.n() != Mp.n()) throw DomainError("webs of different shape");
}

std::uint32_t primitive_root(std::uint32_t p) {
    if (p == 2) return 1;
    auto order_is_full = [&](std::uint32_t g) {
        std::uint32_t ord = 1;
        std::uint64_t x = g;
        while (x != 1) {
            x = x * g % p;
            ++ord;
        }
        return ord == p - 1;
    };
    for (std::uint32_t g = 2; g < p; ++g)
        if (order_is_full(g)) return g;
    throw DomainError("no primitive root found");
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

EquivKind parse_equiv_kind(std::string_view name) {
    if (name == "cong") return EquivKind::Congruence;
    if (name == "full") return EquivKind::FullOrbit;
    if (name == "module") return EquivKind::ModuleIso;
    throw UsageError("unknown equivalence kind '" + std::string(name) + "'");
}

std::uint64_t web_code(const SymWeb& w) {
    WebEnc e = modp::encode_web(w);
    TriShape sh = tri_shape(e.p, e.m, e.n);
    return code_of_enc(sh, e);
}

std::optional<std::pair<Scalar, Mat>> congruent(const SymWeb& M, const SymWeb& Mp,
                                                const EnumOptions& opt) {
    check_comparable(M, Mp);
    Field f = M.field();
    if (!f.finite()) throw DomainError("congruence search requires a finite field");
    std::uint32_t p = f.characteristic();
    std::size_t s = (std::size_t)M.n() + 1;
    std::uint64_t cap = effective_cap(opt, kDefaultEnumCap);
    std::uint64_t sat = cap == UINT64_MAX ? UINT64_MAX : cap + 1;
    if (modp::gl_order(p, s, sat) > cap)
        throw CapError("congruence search exceeds enumeration cap");

    bool mzero = true, mpzero = true;
    for (int i = 0; i <= M.m(); ++i) {
        if (!M.mat(i).is_zero()) mzero = false;
        if (!Mp.mat(i).is_zero()) mpzero = false;
    }
    if (mzero || mpzero) {
        if (mzero && mpzero)
            return std::make_pair(Scalar::one(f), Mat::identity(f, s));
        return std::nullopt;
    }
    if (!proportional(M.discriminant(), Mp.discriminant())) return std::nullopt;

    WebEnc me = modp::encode_web(M);
    WebEnc mpe = modp::encode_web(Mp);
    auto inv = modp::inverse_table(p);
    std::size_t cells = (std::size_t)(M.m() + 1) * s * s;
    std::vector<std::uint32_t> tt(cells), scratch(s * s);
    std::uint64_t rows = 1;
    for (std::size_t i = 0; i < s; ++i) rows *= p;

    std::optional<std::pair<Scalar, Mat>> found;
    modp::for_each_invertible(p, s, 1, rows, [&](const std::uint32_t* P) {
        for (int i = 0; i <= M.m(); ++i)
            modp::congruence_transform(p, s, P, me.mat(i), tt.data() + (std::size_t)i * s * s,
                                       scratch.data());
        std::size_t first = 0;
        while (first < cells && tt[first] == 0) ++first;
        if (first == cells) return true; // cannot happen for nonzero M and invertible P
        if (mpe.a[first] == 0) return true;
        std::uint32_t a = (std::uint32_t)((std::uint64_t)mpe.a[first] * inv[tt[first]] % p);
        for (std::size_t k = 0; k < cells; ++k)
            if ((std::uint64_t)a * tt[k] % p != mpe.a[k]) return true;
        found = std::make_pair(Scalar::residue(f, a), raw_to_mat(f, s, P));
        return false;
    });

    if (found) {
        // exact verification through the generic layer
        const auto& [a, P] = *found;
        Mat Pt = P.transpose();
        for (int i = 0; i <= M.m(); ++i)
            if (!((Pt * M.mat(i) * P).scaled(a) == Mp.mat(i)))
                throw DomainError("internal error: congruence witness failed verification");
    }
    return found;
}

std::optional<GroupElem> full_orbit_equivalent(const SymWeb& M, const SymWeb& Mp,
                                               const EnumOptions& opt) {
    check_comparable(M, Mp);
    Field f = M.field();
    if (!f.finite()) throw DomainError("orbit search requires a finite field");
    std::uint32_t p = f.characteristic();
    std::size_t sa = (std::size_t)M.m() + 1;
    std::size_t sp = (std::size_t)M.n() + 1;
    std::uint64_t sat = UINT64_MAX;
    std::uint64_t glA = modp::gl_order(p, sa, sat);
    std::uint64_t glP = modp::gl_order(p, sp, sat);
    std::uint64_t cap = effective_cap(opt, kDefaultEnumCap);
    if (glA == sat || glP == sat || glA / (p - 1) > cap / glP)
        throw CapError("orbit search exceeds enumeration cap");

    MPoly disc = M.discriminant();
    MPoly discp = Mp.discriminant();

    std::uint64_t rows = 1;
    for (std::size_t i = 0; i < sa; ++i) rows *= p;

    std::optional<GroupElem> found;
    modp::for_each_invertible(p, sa, 1, rows, [&](const std::uint32_t* Araw) {
        // one representative per scalar class: first entry in row-major
        // order must be 1
        std::size_t first = 0;
        while (Araw[first] == 0) ++first;
        if (Araw[first] != 1) return true;
        Mat A = raw_to_mat(f, sa, Araw);
        if (!disc.is_zero() || !discp.is_zero()) {
            MPoly moved = disc.is_zero() ? disc : disc.substitute_linear(A);
            if (!proportional(moved, discp)) return true;
        }
        SymWeb MA = M.act(GroupElem(A, Mat::identity(f, sp)));
        auto w = congruent(MA, Mp, opt);
        if (!w) return true;
        GroupElem g(A.scaled(w->first), w->second);
        SymWeb check = M.act(g);
        if (!(check == Mp))
            throw DomainError("internal error: orbit witness failed verification");
        found = std::move(g);
        return false;
    });
    return found;
}

ModuleIsoResult module_isomorphic(const SymWeb& M, const SymWeb& Mp, const EnumOptions& opt) {
    check_comparable(M, Mp);
    Field f = M.field();
    std::size_t s = (std::size_t)M.n() + 1;
    MPoly d = M.discriminant();
    MPoly dp = Mp.discriminant();
    if (d.is_zero() || dp.is_zero()) throw DomainError("zero discriminant");
    if (!proportional(d, dp)) return {ModuleIsoResult::Absent, std::nullopt};

    // solution space {(U, W) : U M_i = M'_i W}
    std::size_t nunk = 2 * s * s;
    std::size_t neq = (std::size_t)(M.m() + 1) * s * s;
    Mat sys(f, neq, nunk);
    std::size_t eq = 0;
    for (int i = 0; i <= M.m(); ++i) {
        const Mat& Mi = M.mat(i);
        const Mat& Mpi = Mp.mat(i);
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t c = 0; c < s; ++c) {
                for (std::size_t k = 0; k < s; ++k) {
                    // (U M_i)_{r,c} has U_{r,k} coefficient M_i[k][c]
                    sys.at(eq, r * s + k) = sys.at(eq, r * s + k) + Mi.at(k, c);
                    // (M'_i W)_{r,c} has W_{k,c} coefficient M'_i[r][k]
                    sys.at(eq, s * s + k * s + c) = sys.at(eq, s * s + k * s + c) - Mpi.at(r, k);
                }
                ++eq;
            }
    }
    auto basis = kernel_basis(sys);
    std::size_t D = basis.size();
    if (D == 0) return {ModuleIsoResult::Absent, std::nullopt};

    auto assemble = [&](const std::vector<Scalar>& coords) {
        Mat U(f, s, s), W(f, s, s);
        for (std::size_t b = 0; b < D; ++b) {
            if (coords[b].is_zero()) continue;
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = 0; j < s; ++j) {
                    U.at(i, j) = U.at(i, j) + coords[b] * basis[b][i * s + j];
                    W.at(i, j) = W.at(i, j) + coords[b] * basis[b][s * s + i * s + j];
                }
        }
        return std::make_pair(U, W);
    };
    auto finish = [&](const Mat& U, const Mat& W) -> ModuleIsoResult {
        auto V = W.inverse();
        if (!V) throw DomainError("internal error: W singular despite invertible U");
        for (int i = 0; i <= M.m(); ++i)
            if (!(U * M.mat(i) * *V == Mp.mat(i)))
                throw DomainError("internal error: module witness failed verification");
        return {ModuleIsoResult::Witness, std::make_pair(U, *V)};
    };

    if (f.finite()) {
        std::uint64_t q = f.characteristic();
        std::uint64_t cap = effective_cap(opt, kDefaultEnumCap);
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < D; ++i) {
            if (count > cap / q) throw CapError("module isomorphism search exceeds cap");
            count *= q;
        }
        for (std::uint64_t v = 1; v < count; ++v) {
            std::uint64_t t = v;
            std::vector<Scalar> coords;
            coords.reserve(D);
            for (std::size_t i = 0; i < D; ++i) {
                coords.push_back(Scalar::residue(f, (std::uint32_t)(t % q)));
                t /= q;
            }
            auto [U, W] = assemble(coords);
            if (!U.det().is_zero()) return finish(U, W);
        }
        return {ModuleIsoResult::Absent, std::nullopt};
    }

    // Q: det(U) != 0 is a nonempty-or-empty Zariski-open condition on the
    // solution space; sample integer points
    std::mt19937_64 rng(0x53571Eu);
    std::uniform_int_distribution<int> dist(-10, 10);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Scalar> coords;
        coords.reserve(D);
        bool all_zero = true;
        for (std::size_t i = 0; i < D; ++i) {
            int c = dist(rng);
            if (c != 0) all_zero = false;
            coords.push_back(Scalar::of_int(f, c));
        }
        if (all_zero) coords[0] = Scalar::one(f);
        auto [U, W] = assemble(coords);
        if (!U.det().is_zero()) return finish(U, W);
    }
    return {ModuleIsoResult::AbsentProbabilistic, std::nullopt};
}

FiberReport fiber_enumerate(const SymWeb& M, const EnumOptions& opt) {
    Field f = M.field();
    if (!f.finite()) throw DomainError("fiber enumeration requires a finite field");
    if (M.classify() != WebClass::GeometricallyReduced)
        throw DomainError("web is not geometrically reduced");
    EndoAlgebra alg = endomorphism_algebra(M);
    auto er = etale_report(alg);
    if (!(er.commutative && er.sigma_identity && er.etale))
        throw DomainError("endomorphism algebra is not in the etale sigma=id regime");
    auto coset = unit_coset_reps(alg, effective_cap(opt, kDefaultEnumCap));

    FiberReport report{M, {}, 0, false, false};
    MPoly disc = M.discriminant();
    for (const auto& l : coset) {
        auto [R, Rp] = alg.element_pair(l);
        if (!(R == Rp))
            throw DomainError("internal error: sigma-fixed element with distinct pair");
        if (R.det().is_zero())
            throw DomainError("internal error: coset representative is not a unit");
        std::vector<Mat> mats;
        mats.reserve(M.m() + 1);
        for (int i = 0; i <= M.m(); ++i) {
            Mat Wi = M.mat(i) * R;
            if (!Wi.is_symmetric())
                throw DomainError("internal error: M R is not symmetric for sigma-fixed R");
            mats.push_back(std::move(Wi));
        }
        SymWeb w(f, M.m(), M.n(), std::move(mats));
        if (!proportional(w.discriminant(), disc))
            throw DomainError("internal error: fiber representative changes the discriminant class");
        report.reps.push_back(std::move(w));
    }
    report.group_order = report.reps.size();

    bool pairwise = true;
    for (std::size_t i = 0; i < report.reps.size() && pairwise; ++i)
        for (std::size_t j = i + 1; j < report.reps.size(); ++j)
            if (congruent(report.reps[i], report.reps[j], opt)) {
                pairwise = false;
                break;
            }
    report.pairwise_inequivalent = pairwise;
    report.action_transitive_verified =
        pairwise && er.fiber_group_order && *er.fiber_group_order == report.reps.size();
    return report;
}

CensusResult census(Field f, int m, int n, const MPoly& target, const EnumOptions& opt) {
    if (!f.finite()) throw DomainError("census requires a finite field");
    if (m < 2 || n < 1) throw DomainError("census requires m >= 2 and n >= 1");
    if (!(target.field() == f) || target.nvars() != (std::size_t)m + 1)
        throw DomainError("census target incompatible with field or variable count");
    if (target.is_zero()) throw DomainError("census target must be nonzero");
    auto h = target.homogeneity();
    if (h.kind != MPoly::Homogeneity::Homogeneous || h.degree != n + 1)
        throw DomainError("census target must be homogeneous of degree n+1");

    std::uint32_t p = f.characteristic();
    TriShape sh = tri_shape(p, m, n);
    std::uint64_t total = modp::pow_sat(p, sh.D, UINT64_MAX);
    if (total == UINT64_MAX || total > effective_cap(opt, kDefaultEnumCap))
        throw CapError("census web count exceeds enumeration cap");

    // phase 1: filter by disc proportional to target (parallel over ranges)
    unsigned nt = std::max(1u, opt.threads);
    if ((std::uint64_t)nt > total) nt = (unsigned)total;
    std::vector<std::vector<std::uint64_t>> partial(nt);
    {
        std::vector<std::thread> pool;
        std::uint64_t chunk = total / nt;
        for (unsigned t = 0; t < nt; ++t) {
            std::uint64_t lo = t * chunk;
            std::uint64_t hi = (t + 1 == nt) ? total : lo + chunk;
            pool.emplace_back([&, lo, hi, t] {
                for (std::uint64_t code = lo; code < hi; ++code) {
                    SymWeb w = modp::decode_web(decode_code(sh, code));
                    if (proportional(w.discriminant(), target))
                        partial[t].push_back(code);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    std::vector<std::uint64_t> matches;
    for (auto& v : partial) matches.insert(matches.end(), v.begin(), v.end());

    CensusResult res;
    res.field = f;
    res.m = m;
    res.n = n;
    res.total_webs = total;
    res.matching_webs = matches.size();
    if (matches.empty()) return res;

    std::unordered_map<std::uint64_t, std::size_t> idx_of;
    idx_of.reserve(matches.size() * 2);
    for (std::size_t i = 0; i < matches.size(); ++i) idx_of.emplace(matches[i], i);

    // phase 2: close congruence classes under group generators
    std::vector<std::vector<std::uint32_t>> pgens;
    for (std::size_t r = 0; r < sh.s; ++r)
        for (std::size_t c = 0; c < sh.s; ++c) {
            if (r == c) continue;
            std::vector<std::uint32_t> g(sh.s * sh.s, 0);
            for (std::size_t i = 0; i < sh.s; ++i) g[i * sh.s + i] = 1;
            g[r * sh.s + c] = 1;
            pgens.push_back(std::move(g));
        }
    std::uint32_t root = primitive_root(p);
    if (root != 1) {
        std::vector<std::uint32_t> g(sh.s * sh.s, 0);
        g[0] = root;
        for (std::size_t i = 1; i < sh.s; ++i) g[i * sh.s + i] = 1;
        pgens.push_back(std::move(g));
    }

    UnionFind uf(matches.size());
    std::vector<std::uint32_t> scratch(sh.s * sh.s);
    WebEnc img;
    img.p = p;
    img.m = m;
    img.n = n;
    img.a.assign((std::size_t)(m + 1) * sh.s * sh.s, 0);
    for (std::size_t i = 0; i < matches.size(); ++i) {
        WebEnc e = decode_code(sh, matches[i]);
        for (const auto& g : pgens) {
            for (int k = 0; k <= m; ++k)
                modp::congruence_transform(p, sh.s, g.data(), e.mat(k), img.mat(k), scratch.data());
            auto it = idx_of.find(code_of_enc(sh, img));
            if (it == idx_of.end())
                throw DomainError("internal error: congruence image left the census set");
            uf.unite(i, it->second);
        }
        if (root != 1) {
            for (std::size_t k = 0; k < e.a.size(); ++k)
                img.a[k] = (std::uint32_t)((std::uint64_t)e.a[k] * root % p);
            auto it = idx_of.find(code_of_enc(sh, img));
            if (it == idx_of.end())
                throw DomainError("internal error: scalar image left the census set");
            uf.unite(i, it->second);
        }
    }

    // phase 3: congruence classes ordered by minimal member code
    std::unordered_map<std::size_t, std::uint64_t> min_of_root;
    for (std::size_t i = 0; i < matches.size(); ++i) {
        std::size_t r = uf.find(i);
        auto it = min_of_root.find(r);
        if (it == min_of_root.end() || matches[i] < it->second) min_of_root[r] = matches[i];
    }
    std::vector<std::pair<std::uint64_t, std::size_t>> classes; // (min code, root)
    for (const auto& [r, mc] : min_of_root) classes.emplace_back(mc, r);
    std::sort(classes.begin(), classes.end());
    std::unordered_map<std::size_t, int> class_id_of_root;
    for (std::size_t c = 0; c < classes.size(); ++c) class_id_of_root[classes[c].second] = (int)c;

    // phase 4: group congruence classes by module isomorphism
    std::vector<SymWeb> reps;
    reps.reserve(classes.size());
    for (const auto& [mc, r] : classes) reps.push_back(modp::decode_web(decode_code(sh, mc)));
    UnionFind mu(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            if (mu.find(i) == mu.find(j)) continue;
            if (module_isomorphic(reps[i], reps[j], opt).verdict == ModuleIsoResult::Witness)
                mu.unite(i, j);
        }
    std::unordered_map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t c = 0; c < classes.size(); ++c) members[mu.find(c)].push_back(c);
    std::vector<std::pair<std::uint64_t, std::size_t>> modules; // (min class code, root)
    for (const auto& [r, mem] : members) {
        std::uint64_t mn = UINT64_MAX;
        for (auto c : mem) mn = std::min(mn, classes[c].first);
        modules.emplace_back(mn, r);
    }
    std::sort(modules.begin(), modules.end());

    std::unordered_map<std::size_t, int> module_id_of_root;
    for (std::size_t k = 0; k < modules.size(); ++k) {
        const auto& mem = members[modules[k].second];
        CensusModuleClass mc;
        mc.id = (int)k;
        for (auto c : mem) mc.class_min_codes.push_back(classes[c].first);
        std::sort(mc.class_min_codes.begin(), mc.class_min_codes.end());
        // r and prediction from the minimal representative
        SymWeb rep = modp::decode_web(decode_code(sh, mc.class_min_codes.front()));
        try {
            auto er = etale_report(endomorphism_algebra(rep));
            if (er.factor_count_r) mc.r = *er.factor_count_r;
            mc.predicted = er.fiber_group_order;
        } catch (const DomainError&) {
            // zero-disc cannot happen here; keep n/a on any structural failure
        }
        module_id_of_root[modules[k].second] = (int)k;
        res.module_classes.push_back(std::move(mc));
    }

    for (std::size_t i = 0; i < matches.size(); ++i) {
        int cls = class_id_of_root[uf.find(i)];
        int mod = module_id_of_root[mu.find((std::size_t)cls)];
        res.class_of_code.emplace(matches[i], std::make_pair(mod, cls));
    }
    return res;
}

std::string CensusResult::table_text() const {
    std::size_t nclasses = 0;
    for (const auto& mc : module_classes) nclasses += mc.class_min_codes.size();
    std::ostringstream out;
    out << "webs " << total_webs << " matching " << matching_webs << " congruence_classes "
        << nclasses << " module_classes " << module_classes.size() << "\n";
    std::vector<std::array<std::string, 4>> rows;
    rows.push_back({"module_class_id", "congruence_class_count", "r", "predicted"});
    for (const auto& mc : module_classes) {
        rows.push_back({std::to_string(mc.id), std::to_string(mc.class_min_codes.size()),
                        mc.r >= 0 ? std::to_string(mc.r) : "n/a",
                        mc.predicted ? std::to_string(*mc.predicted) : "n/a"});
    }
    std::size_t w0 = 0, w1 = 0, w2 = 0;
    for (const auto& r : rows) {
        w0 = std::max(w0, r[0].size());
        w1 = std::max(w1, r[1].size());
        w2 = std::max(w2, r[2].size());
    }
    for (const auto& r : rows) {
        out << r[0] << std::string(w0 - r[0].size() + 2, ' ') << r[1]
            << std::string(w1 - r[1].size() + 2, ' ') << r[2]
            << std::string(w2 - r[2].size() + 2, ' ') << r[3] << "\n";
    }
    return out.str();
}

std::optional<std::pair<int, int>> CensusResult::locate(const SymWeb& w) const {
    if (!w.field().finite()) return std::nullopt;
    auto it = class_of_code.find(web_code(w));
    if (it == class_of_code.end()) return std::nullopt;
    return it->second;
}

} // namespace symweb
