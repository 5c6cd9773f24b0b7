#include "symweb/web.hpp"

#include <sstream>

namespace symweb {

PolyMat PolyMat::operator*(const PolyMat& o) const {
    if (cols_ != o.rows_) throw DomainError("polynomial matrix dimension mismatch");
    PolyMat r(f_, nvars_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const MPoly& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
        }
    return r;
}

bool PolyMat::operator==(const PolyMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool PolyMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::string web_class_name(WebClass c) {
    switch (c) {
    case WebClass::ZeroDisc: return "zero_disc";
    case WebClass::Nonreduced: return "nonreduced";
    case WebClass::GeometricallyReduced: return "geometrically_reduced";
    }
    return "?";
}

GroupElem::GroupElem(Mat a, Mat p) : A(std::move(a)), P(std::move(p)) {
    if (A.rows() != A.cols() || P.rows() != P.cols()) throw DomainError("group element must be square");
    if (A.det().is_zero()) throw DomainError("singular matrix A");
    if (P.det().is_zero()) throw DomainError("singular matrix P");
}

SymWeb::SymWeb(Field f, int m, int n, std::vector<Mat> mats)
    : f_(f), m_(m), n_(n), mats_(std::move(mats)) {
    if (m_ < 2) throw DomainError("m must be >= 2");
    if (n_ < 1) throw DomainError("n must be >= 1");
    if ((int)mats_.size() != m_ + 1) throw DomainError("web must contain m+1 matrices");
    for (const auto& M : mats_) {
        if (!(M.field() == f_)) throw DomainError("field mismatch in web matrices");
        if (M.rows() != (std::size_t)n_ + 1 || M.cols() != (std::size_t)n_ + 1)
            throw DomainError("web matrices must be (n+1)x(n+1)");
        if (!M.is_symmetric()) throw DomainError("web matrices must be symmetric");
    }
}

bool SymWeb::operator==(const SymWeb& o) const {
    return f_ == o.f_ && m_ == o.m_ && n_ == o.n_ && mats_ == o.mats_;
}

PolyMat SymWeb::linear_matrix() const {
    std::size_t size = n_ + 1;
    PolyMat M(f_, m_ + 1, size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            MPoly entry(f_, m_ + 1);
            for (int k = 0; k <= m_; ++k) {
                ExpVec e(m_ + 1, 0);
                e[k] = 1;
                entry.add_term(e, mats_[k].at(i, j));
            }
            M.at(i, j) = std::move(entry);
        }
    return M;
}

MPoly poly_det(const PolyMat& M) {
    if (M.rows() != M.cols()) throw DomainError("determinant of non-square matrix");
    std::size_t size = M.rows();
    if (size > 12) throw CapError("polynomial determinant capped at size 12");
    if (size == 0) throw DomainError("empty matrix");
    Field f = M.at(0, 0).field();
    std::size_t nvars = M.at(0, 0).nvars();
    // dp[S] = det of the submatrix on rows 0..popcount(S)-1 and columns S
    std::vector<MPoly> dp(std::size_t(1) << size, MPoly(f, nvars));
    dp[0] = MPoly::constant(f, nvars, Scalar::one(f));
    for (std::size_t S = 1; S < dp.size(); ++S) {
        int row = __builtin_popcount((unsigned)S) - 1;
        MPoly acc(f, nvars);
        int idx = 0;
        for (std::size_t j = 0; j < size; ++j) {
            if (!(S >> j & 1)) continue;
            const MPoly& entry = M.at(row, j);
            if (!entry.is_zero()) {
                MPoly term = entry * dp[S ^ (std::size_t(1) << j)];
                // expansion along the last row: sign (-1)^{row + idx}
                acc = ((row + idx) % 2 == 0) ? acc + term : acc - term;
            }
            ++idx;
        }
        dp[S] = std::move(acc);
    }
    return dp.back();
}

MPoly SymWeb::discriminant() const {
    return poly_det(linear_matrix());
}

PolyMat SymWeb::adjugate() const {
    PolyMat M = linear_matrix();
    std::size_t size = n_ + 1;
    PolyMat adj(f_, m_ + 1, size, size);
    if (size == 1) {
        adj.at(0, 0) = MPoly::constant(f_, m_ + 1, Scalar::one(f_));
        return adj;
    }
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            PolyMat minor(f_, m_ + 1, size - 1, size - 1);
            for (std::size_t r = 0, rr = 0; r < size; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < size; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = M.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            MPoly cof = poly_det(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

SymWeb SymWeb::act(const GroupElem& g) const {
    if (g.A.rows() != (std::size_t)m_ + 1 || g.P.rows() != (std::size_t)n_ + 1)
        throw DomainError("group element dimension mismatch");
    if (!(g.A.field() == f_) || !(g.P.field() == f_)) throw DomainError("field mismatch");
    Mat Pt = g.P.transpose();
    std::vector<Mat> congr;
    congr.reserve(m_ + 1);
    for (int i = 0; i <= m_; ++i) congr.push_back(Pt * mats_[i] * g.P);
    std::vector<Mat> out;
    out.reserve(m_ + 1);
    for (int j = 0; j <= m_; ++j) {
        Mat s(f_, n_ + 1, n_ + 1);
        for (int i = 0; i <= m_; ++i) {
            const Scalar& a = g.A.at(i, j);
            if (a.is_zero()) continue;
            s = s + congr[i].scaled(a);
        }
        out.push_back(std::move(s));
    }
    return SymWeb(f_, m_, n_, std::move(out));
}

SymWeb SymWeb::normalized_act(const GroupElem& g) const {
    SymWeb moved = act(g);
    Scalar c = g.A.det().inverse();
    std::vector<Mat> out;
    out.reserve(m_ + 1);
    for (const auto& M : moved.mats_) out.push_back(M.scaled(c));
    return SymWeb(f_, m_, n_, std::move(out));
}

WebClass SymWeb::classify() const {
    MPoly d = discriminant();
    if (d.is_zero()) return WebClass::ZeroDisc;
    return is_geometrically_squarefree(d) ? WebClass::GeometricallyReduced
                                          : WebClass::Nonreduced;
}

MultiplicityProfile SymWeb::multiplicity_profile(const std::vector<MPoly>& factors) const {
    MPoly d = discriminant();
    if (d.is_zero()) throw DomainError("zero discriminant");
    MultiplicityProfile out{{}, Scalar::one(f_)};
    MPoly rem(d);
    for (const auto& F : factors) {
        int e = multiplicity(d, F);
        out.multiplicities.push_back(e);
        for (int i = 0; i < e; ++i) {
            auto q = divide_exact(rem, F);
            if (!q) throw DomainError("internal error: multiplicity not divisible");
            rem = std::move(*q);
        }
    }
    if (rem.total_degree() != 0)
        throw DomainError("factors do not exhaust the discriminant");
    out.unit = rem.leading_coefficient();
    return out;
}

namespace {

struct SwtParser {
    std::istringstream in;
    int lineno = 0;

    explicit SwtParser(std::string_view text) : in{std::string(text)} {}

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(".swt line " + std::to_string(lineno) + ": " + what);
    }

    // next nonempty line with comments stripped
    bool next_line(std::string& out) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = line.find_last_not_of(" \t\r");
            out = line.substr(a, b - a + 1);
            return true;
        }
        return false;
    }

    std::vector<std::string> expect_tokens(const std::string& what) {
        std::string line;
        if (!next_line(line)) fail("unexpected end of file, expected " + what);
        std::vector<std::string> toks;
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) toks.push_back(t);
        return toks;
    }
};

} // namespace

SymWeb SymWeb::parse(std::string_view text) {
    SwtParser p(text);

    auto toks = p.expect_tokens("field header");
    Field f = Field::rationals();
    if (toks.size() == 2 && toks[0] == "field" && toks[1] == "Q") {
        // rationals
    } else if (toks.size() == 3 && toks[0] == "field" && toks[1] == "F") {
        unsigned long ch = 0;
        try {
            ch = std::stoul(toks[2]);
        } catch (...) {
            p.fail("bad characteristic '" + toks[2] + "'");
        }
        try {
            f = Field::prime((std::uint32_t)ch);
        } catch (const Error& e) {
            p.fail(e.what());
        }
    } else {
        p.fail("expected 'field F <p>' or 'field Q'");
    }

    auto read_int = [&](const char* key) {
        auto t = p.expect_tokens(std::string("'") + key + " <int>'");
        if (t.size() != 2 || t[0] != key) p.fail(std::string("expected '") + key + " <int>'");
        try {
            return std::stoi(t[1]);
        } catch (...) {
            p.fail(std::string("bad integer for ") + key);
        }
    };
    int m = read_int("m");
    int n = read_int("n");
    if (m < 2) p.fail("m must be >= 2");
    if (n < 1) p.fail("n must be >= 1");

    std::vector<Mat> mats;
    for (int idx = 0; idx <= m; ++idx) {
        auto header = p.expect_tokens("matrix header");
        if (header.size() != 2 || header[0] != "matrix" || header[1] != std::to_string(idx))
            p.fail("expected 'matrix " + std::to_string(idx) + "'");
        Mat M(f, n + 1, n + 1);
        for (int r = 0; r <= n; ++r) {
            auto row = p.expect_tokens("matrix row");
            if ((int)row.size() != n + 1) p.fail("expected " + std::to_string(n + 1) + " entries in row");
            for (int c = 0; c <= n; ++c) {
                try {
                    M.at(r, c) = Scalar::parse(f, row[c]);
                } catch (const Error& e) {
                    p.fail(e.what());
                }
            }
        }
        mats.push_back(std::move(M));
    }
    std::string extra;
    if (p.next_line(extra)) p.fail("trailing content '" + extra + "'");

    try {
        return SymWeb(f, m, n, std::move(mats));
    } catch (const DomainError& e) {
        throw ParseError(std::string(".swt: ") + e.what());
    }
}

std::string SymWeb::render() const {
    std::string out = "field " + f_.str() + "\n";
    out += "m " + std::to_string(m_) + "\n";
    out += "n " + std::to_string(n_) + "\n";
    for (int i = 0; i <= m_; ++i) {
        out += "matrix " + std::to_string(i) + "\n";
        for (int r = 0; r <= n_; ++r) {
            for (int c = 0; c <= n_; ++c) {
                if (c) out += ' ';
                out += mats_[i].at(r, c).str();
            }
            out += '\n';
        }
    }
    return out;
}

} // namespace symweb
