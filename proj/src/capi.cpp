#include "symweb.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "symweb/endo.hpp"
#include "symweb/equiv.hpp"
#include "symweb/quadauto.hpp"
#include "symweb/web.hpp"

using namespace symweb;

struct sw_web {
    SymWeb web;
};

namespace {

thread_local std::string g_last_error;

sw_status fail(int code, const std::string& msg) {
    g_last_error = msg;
    return (sw_status)code;
}

template <typename Fn>
sw_status guarded(Fn&& fn) {
    try {
        fn();
        return SW_OK;
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail(SW_ERR_DOMAIN, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = (char*)std::malloc(s.size() + 1);
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

EnumOptions options_from(const sw_options* opt) {
    EnumOptions o;
    if (opt) {
        if (opt->max_enum) o.max_enum = opt->max_enum;
        if (opt->threads) o.threads = opt->threads;
    }
    return o;
}

// "a b c;d e f;g h i" -> square matrix over the web's field
Mat parse_matrix_rows(Field f, const char* text, const char* what) {
    if (!text) throw UsageError(std::string("missing matrix ") + what);
    std::vector<std::vector<Scalar>> rows;
    std::istringstream in(text);
    std::string row;
    while (std::getline(in, row, ';')) {
        std::istringstream rs(row);
        std::string tok;
        std::vector<Scalar> entries;
        while (rs >> tok) entries.push_back(Scalar::parse(f, tok));
        if (!entries.empty()) rows.push_back(std::move(entries));
    }
    if (rows.empty()) throw ParseError(std::string("empty matrix ") + what);
    std::size_t n = rows.size();
    Mat M(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw ParseError(std::string("matrix ") + what + " is not square");
        for (std::size_t j = 0; j < n; ++j) M.at(i, j) = rows[i][j];
    }
    return M;
}

std::string render_matrix(const Mat& M) {
    std::string out;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        if (i) out += ';';
        for (std::size_t j = 0; j < M.cols(); ++j) {
            if (j) out += ' ';
            out += M.at(i, j).str();
        }
    }
    return out;
}

std::string endo_report_text(const SymWeb& web, const EnumOptions& opt) {
    EndoAlgebra alg = endomorphism_algebra(web);
    EtaleReport er = etale_report(alg);
    std::ostringstream out;
    out << "dim " << alg.dim() << "\n";
    out << "commutative " << (er.commutative ? "true" : "false") << "\n";
    out << "sigma_identity " << (er.sigma_identity ? "true" : "false") << "\n";
    out << "etale " << (er.etale ? "true" : "false") << "\n";
    out << "r ";
    if (er.factor_count_r) out << *er.factor_count_r;
    else out << "n/a";
    out << "\n";
    out << "fiber_group_order ";
    if (er.fiber_group_order) out << *er.fiber_group_order;
    else if (er.fiber_group_infinite_or_unknown) out << "infinite-or-unknown";
    else out << "n/a";
    out << "\n";
    out << "norm_kernel_order ";
    if (web.field().finite()) out << norm_kernel_order(alg, effective_cap(opt, kDefaultEnumCap));
    else out << "n/a";
    out << "\n";
    return out.str();
}

std::string autgroup_report_text(const SymWeb& web, int ext, const EnumOptions& opt) {
    QuadricSystem Q = QuadricSystem::make(web);
    GroupReport rep = stabilizer_groups(Q, opt);
    std::ostringstream out;
    out << "E_Q " << rep.e_order << "\n";
    out << "F_Q " << rep.f_order << "\n";
    out << "P_Q " << rep.p_order << "\n";
    out << "H_Q " << rep.h_order << "\n";
    out << "Aut " << rep.aut_order << "\n";
    out << "kerN " << rep.norm_kernel << "\n";
    out << "exactness_ok " << (rep.exactness_ok ? "true" : "false") << "\n";
    if (ext > 0) {
        auto pts = base_locus_points(Q, (unsigned)ext, opt);
        std::uint64_t q_ext = 1;
        for (int i = 0; i < ext; ++i) q_ext *= web.field().characteristic();
        out << "#X_Q(F_" << q_ext << ") " << pts.size() << "\n";
    }
    return out.str();
}

} // namespace

extern "C" {

const char* sw_version(void) { return "symweb 1.0.0"; }

const char* sw_last_error(void) { return g_last_error.c_str(); }

void sw_free(char* text) { std::free(text); }

void sw_web_free(sw_web* web) { delete web; }

sw_status sw_web_parse(const char* text, sw_web** out) {
    if (!text || !out) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] { *out = new sw_web{SymWeb::parse(text)}; });
}

sw_status sw_web_render(const sw_web* web, char** text) {
    if (!web || !text) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] { *text = dup_string(web->web.render()); });
}

sw_status sw_web_disc(const sw_web* web, char** poly_text) {
    if (!web || !poly_text) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] { *poly_text = dup_string(web->web.discriminant().str()); });
}

sw_status sw_web_classify(const sw_web* web, char** tag) {
    if (!web || !tag) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] { *tag = dup_string(web_class_name(web->web.classify())); });
}

sw_status sw_web_act(const sw_web* web, const char* a_rows, const char* p_rows,
                     int normalized, sw_web** out) {
    if (!web || !out) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] {
        Field f = web->web.field();
        Mat A = parse_matrix_rows(f, a_rows, "A");
        Mat P = parse_matrix_rows(f, p_rows, "P");
        GroupElem g(std::move(A), std::move(P));
        *out = new sw_web{normalized ? web->web.normalized_act(g) : web->web.act(g)};
    });
}

sw_status sw_web_endo_report(const sw_web* web, const sw_options* opt, char** report) {
    if (!web || !report) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] { *report = dup_string(endo_report_text(web->web, options_from(opt))); });
}

sw_status sw_web_fiber(const sw_web* web, const sw_options* opt, sw_web*** reps, size_t* count) {
    if (!web || !reps || !count) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] {
        FiberReport rep = fiber_enumerate(web->web, options_from(opt));
        sw_web** arr = (sw_web**)std::malloc(sizeof(sw_web*) * rep.reps.size());
        for (std::size_t i = 0; i < rep.reps.size(); ++i) arr[i] = new sw_web{rep.reps[i]};
        *reps = arr;
        *count = rep.reps.size();
    });
}

sw_status sw_web_equiv(const sw_web* a, const sw_web* b, const char* kind,
                       const sw_options* opt, int* verdict, char** detail) {
    if (!a || !b || !kind || !verdict || !detail) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] {
        EnumOptions o = options_from(opt);
        std::ostringstream out;
        switch (parse_equiv_kind(kind)) {
        case EquivKind::Congruence: {
            auto w = congruent(a->web, b->web, o);
            if (w) {
                *verdict = 1;
                out << "a " << w->first.str() << "\n";
                out << "P " << render_matrix(w->second) << "\n";
            } else {
                *verdict = 0;
            }
            break;
        }
        case EquivKind::FullOrbit: {
            auto w = full_orbit_equivalent(a->web, b->web, o);
            if (w) {
                *verdict = 1;
                out << "A " << render_matrix(w->A) << "\n";
                out << "P " << render_matrix(w->P) << "\n";
            } else {
                *verdict = 0;
            }
            break;
        }
        case EquivKind::ModuleIso: {
            auto res = module_isomorphic(a->web, b->web, o);
            if (res.verdict == ModuleIsoResult::Witness) {
                *verdict = 1;
                out << "U " << render_matrix(res.uv->first) << "\n";
                out << "V " << render_matrix(res.uv->second) << "\n";
            } else {
                *verdict = res.verdict == ModuleIsoResult::Absent ? 0 : -1;
            }
            break;
        }
        }
        *detail = dup_string(out.str());
    });
}

sw_status sw_census(const char* field, int m, int n, const char* disc_text,
                    const sw_options* opt, char** table) {
    if (!field || !disc_text || !table) return fail(SW_ERR_USAGE, "null argument");
    return guarded([&] {
        if (m < 2 || n < 1) throw DomainError("census requires m >= 2 and n >= 1");
        std::string fs(field);
        Field f = Field::rationals();
        if (fs == "Q") {
            // census itself rejects infinite fields with a domain error
        } else if (fs.size() >= 2 && fs[0] == 'F') {
            unsigned long p = 0;
            try {
                p = std::stoul(fs.substr(1));
            } catch (...) {
                throw UsageError("field must be 'F<p>' or 'Q'");
            }
            f = Field::prime((std::uint32_t)p);
        } else {
            throw UsageError("field must be 'F<p>' or 'Q'");
        }
        MPoly target = MPoly::parse(f, (std::size_t)m + 1, disc_text);
        CensusResult res = census(f, m, n, target, options_from(opt));
        *table = dup_string(res.table_text());
    });
}

sw_status sw_autgroup(const sw_web* web, int ext, const sw_options* opt, char** report) {
    if (!web || !report) return fail(SW_ERR_USAGE, "null argument");
    return guarded(
        [&] { *report = dup_string(autgroup_report_text(web->web, ext, options_from(opt))); });
}

} // extern "C"
