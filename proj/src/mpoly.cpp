#include "symweb/mpoly.hpp"

#include <algorithm>
#include <cctype>

namespace symweb {

MPoly::MPoly(Field f, std::size_t nvars) : f_(f), nvars_(nvars) {
    if (nvars == 0) throw DomainError("polynomial needs at least one variable");
}

MPoly MPoly::constant(Field f, std::size_t nvars, const Scalar& c) {
    MPoly p(f, nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(Field f, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DomainError("variable index out of range");
    ExpVec e(nvars, 0);
    e[i] = 1;
    return monomial(f, nvars, e, Scalar::one(f));
}

MPoly MPoly::monomial(Field f, std::size_t nvars, const ExpVec& e, const Scalar& c) {
    if (e.size() != nvars) throw DomainError("exponent vector length mismatch");
    MPoly p(f, nvars);
    p.add_term(e, c);
    return p;
}

void MPoly::add_term(const ExpVec& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

void MPoly::check_compatible(const MPoly& o) const {
    if (!(f_ == o.f_)) throw DomainError("field mismatch");
    if (nvars_ != o.nvars_) throw DomainError("variable count mismatch");
}

MPoly MPoly::operator+(const MPoly& o) const {
    check_compatible(o);
    MPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    check_compatible(o);
    MPoly r(*this);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(f_, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    check_compatible(o);
    MPoly r(f_, nvars_);
    ExpVec e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::scaled(const Scalar& c) const {
    MPoly r(f_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

MPoly MPoly::pow(std::uint32_t e) const {
    MPoly r = constant(f_, nvars_, Scalar::one(f_));
    for (std::uint32_t i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    return f_ == o.f_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

MPoly MPoly::substitute_linear(const Mat& A) const {
    if (A.rows() != nvars_ || A.cols() != nvars_) throw DomainError("substitution matrix size mismatch");
    if (!(A.field() == f_)) throw DomainError("field mismatch");
    if (A.det().is_zero()) throw DomainError("substitution matrix is singular");
    std::vector<MPoly> forms;
    forms.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        MPoly li(f_, nvars_);
        for (std::size_t j = 0; j < nvars_; ++j) {
            ExpVec e(nvars_, 0);
            e[j] = 1;
            li.add_term(e, A.at(i, j));
        }
        forms.push_back(std::move(li));
    }
    // cache powers of each linear form as needed
    std::vector<std::vector<MPoly>> powers(nvars_);
    auto form_pow = [&](std::size_t i, std::uint32_t e) -> const MPoly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(f_, nvars_, Scalar::one(f_)));
        while (cache.size() <= e) cache.push_back(cache.back() * forms[i]);
        return cache[e];
    };
    MPoly r(f_, nvars_);
    for (const auto& [e, c] : terms_) {
        MPoly t = constant(f_, nvars_, c);
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i]) t = t * form_pow(i, e[i]);
        r = r + t;
    }
    return r;
}

MPoly::Homogeneity MPoly::homogeneity() const {
    if (terms_.empty()) return {Homogeneity::Zero, 0};
    long deg = -1;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (auto x : e) d += x;
        if (deg == -1) deg = d;
        else if (d != deg) return {Homogeneity::Inhomogeneous, 0};
    }
    return {Homogeneity::Homogeneous, deg};
}

MPoly MPoly::derivative(std::size_t var) const {
    if (var >= nvars_) throw DomainError("variable index out of range");
    MPoly r(f_, nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        ExpVec d(e);
        --d[var];
        r.add_term(d, c * Scalar::of_int(f_, e[var]));
    }
    return r;
}

long MPoly::total_degree() const {
    long deg = -1;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (auto x : e) d += x;
        deg = std::max(deg, d);
    }
    return deg;
}

Scalar MPoly::leading_coefficient() const {
    if (terms_.empty()) return Scalar::zero(f_);
    return terms_.begin()->second;
}

std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    MPoly q(f.field(), f.nvars());
    MPoly r(f);
    const auto& glead = *g.terms().begin();
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().begin();
        ExpVec e(r.nvars());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (rlead.first[i] < glead.first[i]) return std::nullopt;
            e[i] = rlead.first[i] - glead.first[i];
        }
        Scalar c = rlead.second / glead.second;
        MPoly t = MPoly::monomial(f.field(), f.nvars(), e, c);
        q = q + t;
        r = r - t * g;
    }
    return q;
}

namespace {

// univariate view in variable v: coefficient polys with exponent 0 at v
std::vector<MPoly> to_uni(const MPoly& f, std::size_t v) {
    std::vector<MPoly> coeffs;
    for (const auto& [e, c] : f.terms()) {
        std::uint32_t d = e[v];
        while (coeffs.size() <= d) coeffs.emplace_back(f.field(), f.nvars());
        ExpVec rest(e);
        rest[v] = 0;
        coeffs[d].add_term(rest, c);
    }
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    return coeffs;
}

MPoly from_uni(const std::vector<MPoly>& u, std::size_t v, Field f, std::size_t nvars) {
    MPoly r(f, nvars);
    for (std::size_t d = 0; d < u.size(); ++d) {
        for (const auto& [e, c] : u[d].terms()) {
            ExpVec full(e);
            full[v] = (std::uint32_t)d;
            r.add_term(full, c);
        }
    }
    return r;
}

void uni_trim(std::vector<MPoly>& u) {
    while (!u.empty() && u.back().is_zero()) u.pop_back();
}

// pseudo-remainder of a by b in the main variable (b nonzero)
std::vector<MPoly> uni_prem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    const MPoly& lb = b.back();
    while (a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        MPoly la = a.back();
        for (auto& c : a) c = c * lb;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift] = a[i + shift] - la * b[i];
        a.pop_back();
        uni_trim(a);
        if (a.empty()) break;
    }
    return a;
}

MPoly content_of(const std::vector<MPoly>& u) {
    MPoly c(u.at(0).field(), u.at(0).nvars());
    for (const auto& coeff : u) c = poly_gcd(c, coeff);
    return c;
}

std::vector<MPoly> primitive_part(const std::vector<MPoly>& u, const MPoly& content) {
    std::vector<MPoly> r;
    r.reserve(u.size());
    for (const auto& coeff : u) {
        if (coeff.is_zero()) {
            r.emplace_back(coeff);
            continue;
        }
        auto q = divide_exact(coeff, content);
        if (!q) throw DomainError("internal error: content does not divide coefficient");
        r.push_back(std::move(*q));
    }
    return r;
}

MPoly make_monic(const MPoly& f) {
    if (f.is_zero()) return f;
    return f.scaled(f.leading_coefficient().inverse());
}

} // namespace

MPoly poly_gcd(const MPoly& f, const MPoly& g) {
    if (!(f.field() == g.field()) || f.nvars() != g.nvars())
        throw DomainError("gcd operands incompatible");
    if (f.is_zero()) return make_monic(g);
    if (g.is_zero()) return make_monic(f);
    if (f.is_constant() || g.is_constant())
        return MPoly::constant(f.field(), f.nvars(), Scalar::one(f.field()));

    // main variable: lowest index occurring in either operand
    std::size_t v = f.nvars();
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < v; ++i)
            if (e[i]) { v = std::min(v, i); break; }
    for (const auto& [e, c] : g.terms())
        for (std::size_t i = 0; i < v; ++i)
            if (e[i]) { v = std::min(v, i); break; }

    auto uf = to_uni(f, v);
    auto ug = to_uni(g, v);
    MPoly cf = content_of(uf);
    MPoly cg = content_of(ug);
    MPoly cont = poly_gcd(cf, cg);

    auto a = primitive_part(uf, cf);
    auto b = primitive_part(ug, cg);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = uni_prem(a, b);
        a = std::move(b);
        if (r.empty()) {
            b.clear();
        } else {
            MPoly cr = content_of(r);
            b = primitive_part(r, cr);
        }
    }
    MPoly pp = from_uni(a, v, f.field(), f.nvars());
    return make_monic(cont * pp);
}

int multiplicity(const MPoly& f, const MPoly& g) {
    if (f.is_zero()) throw DomainError("multiplicity of the zero polynomial");
    if (g.is_constant()) throw DomainError("multiplicity divisor must be non-constant");
    int e = 0;
    MPoly cur(f);
    for (;;) {
        auto q = divide_exact(cur, g);
        if (!q) return e;
        cur = std::move(*q);
        ++e;
    }
}

bool is_geometrically_squarefree(const MPoly& f) {
    if (f.is_zero()) throw DomainError("squarefreeness of the zero polynomial");
    auto h = f.homogeneity();
    if (h.kind != MPoly::Homogeneity::Homogeneous || h.degree < 1)
        throw DomainError("squarefreeness requires a homogeneous polynomial of degree >= 1");
    MPoly g(f);
    for (std::size_t i = 0; i < f.nvars(); ++i)
        g = poly_gcd(g, f.derivative(i));
    return g.total_degree() == 0;
}

std::optional<Scalar> proportional(const MPoly& f, const MPoly& g) {
    if (f.is_zero() && g.is_zero()) return Scalar::one(f.field());
    if (f.is_zero() || g.is_zero()) return std::nullopt;
    if (!(f.field() == g.field()) || f.nvars() != g.nvars()) return std::nullopt;
    if (f.terms().size() != g.terms().size()) return std::nullopt;
    Scalar u = f.terms().begin()->second / g.terms().begin()->second;
    auto it = f.terms().begin();
    auto jt = g.terms().begin();
    for (; it != f.terms().end(); ++it, ++jt) {
        if (it->first != jt->first) return std::nullopt;
        if (!(it->second == u * jt->second)) return std::nullopt;
    }
    return u;
}

namespace {

struct PolyParser {
    Field f;
    std::size_t nvars;
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("polynomial parse error at offset " + std::to_string(pos) + ": " + what);
    }

    std::string read_number() { // digits with optional '/'
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit((unsigned char)s[pos]) || s[pos] == '/')) ++pos;
        if (pos == start) fail("expected a number");
        return std::string(s.substr(start, pos - start));
    }

    std::uint32_t read_uint() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) fail("expected digits");
        unsigned long v = 0;
        try {
            v = std::stoul(std::string(s.substr(start, pos - start)));
        } catch (...) {
            fail("integer out of range");
        }
        if (v > 0xFFFFFFFFul) fail("integer out of range");
        return (std::uint32_t)v;
    }

    // factor := X<i> [^<e>]
    void read_factor(ExpVec& e) {
        skip_ws();
        if (peek() != 'X') fail("expected variable");
        ++pos;
        std::uint32_t idx = read_uint();
        if (idx >= nvars) fail("variable index out of range");
        std::uint32_t ex = 1;
        if (peek() == '^') {
            ++pos;
            ex = read_uint();
        }
        e[idx] += ex;
    }

    MPoly parse() {
        MPoly r(f, nvars);
        bool first = true;
        while (!eof()) {
            bool negative = false;
            char c = peek();
            if (c == '+' || c == '-') {
                negative = (c == '-');
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            if (eof()) fail("dangling sign");
            // term
            Scalar coeff = Scalar::one(f);
            bool have_coeff = false;
            if (peek() != 'X') {
                coeff = Scalar::parse(f, read_number());
                have_coeff = true;
            }
            ExpVec e(nvars, 0);
            bool have_factor = false;
            if (!have_coeff) {
                read_factor(e);
                have_factor = true;
            }
            while (peek() == '*') {
                ++pos;
                read_factor(e);
                have_factor = true;
            }
            if (!have_coeff && !have_factor) fail("empty term");
            if (negative) coeff = -coeff;
            r.add_term(e, coeff);
            first = false;
        }
        if (first) fail("empty polynomial text");
        return r;
    }
};

void render_monomial(std::string& out, const ExpVec& e, bool& any) {
    any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) out += '*';
        out += 'X';
        out += std::to_string(i);
        if (e[i] > 1) {
            out += '^';
            out += std::to_string(e[i]);
        }
        any = true;
    }
}

} // namespace

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Scalar coeff = c;
        if (f_.finite()) {
            if (!first) out += " + ";
        } else {
            bool neg = coeff.rational_value() < 0;
            if (first) {
                if (neg) out += '-';
            } else {
                out += neg ? " - " : " + ";
            }
            if (neg) coeff = -coeff;
        }
        std::string mono;
        bool any = false;
        render_monomial(mono, e, any);
        if (!any) {
            out += coeff.str();
        } else if (coeff.is_one()) {
            out += mono;
        } else {
            out += coeff.str();
            out += '*';
            out += mono;
        }
        first = false;
    }
    return out;
}

MPoly MPoly::parse(Field f, std::size_t nvars, std::string_view text) {
    PolyParser p{f, nvars, text};
    return p.parse();
}

} // namespace symweb
