#ifndef SYMWEB_WEB_HPP
#define SYMWEB_WEB_HPP

#include <string>
#include <string_view>
#include <vector>

#include "symweb/linalg.hpp"
#include "symweb/mpoly.hpp"

namespace symweb {

// Matrix of polynomials, used for M(X), adjugates and identity checks.
class PolyMat {
public:
    PolyMat(Field f, std::size_t nvars, std::size_t rows, std::size_t cols)
        : f_(f), nvars_(nvars), rows_(rows), cols_(cols),
          a_(rows * cols, MPoly(f, nvars)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    MPoly& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const MPoly& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    PolyMat operator*(const PolyMat& o) const;
    bool operator==(const PolyMat& o) const;
    bool is_symmetric() const;

private:
    Field f_;
    std::size_t nvars_, rows_, cols_;
    std::vector<MPoly> a_;
};

enum class WebClass { ZeroDisc, Nonreduced, GeometricallyReduced };

std::string web_class_name(WebClass c);

// Pair (A, P) in GL_{m+1} x GL_{n+1}, validated invertible.
struct GroupElem {
    Mat A;
    Mat P;
    GroupElem(Mat a, Mat p);
};

struct MultiplicityProfile {
    std::vector<int> multiplicities;
    Scalar unit;
};

// An (m+1)-tuple of symmetric (n+1)x(n+1) matrices, m >= 2, n >= 1.
class SymWeb {
public:
    SymWeb(Field f, int m, int n, std::vector<Mat> mats);

    Field field() const { return f_; }
    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<Mat>& mats() const { return mats_; }
    const Mat& mat(std::size_t i) const { return mats_[i]; }

    bool operator==(const SymWeb& o) const;

    PolyMat linear_matrix() const; // M(X) = sum X_i M_i

    MPoly discriminant() const;      // det M(X); zero is a valid result
    PolyMat adjugate() const;        // signed cofactors; M(X) adj = disc * I
    SymWeb act(const GroupElem& g) const;            // M . (A, P)
    SymWeb normalized_act(const GroupElem& g) const; // det(A)^{-1} M . (A, P)
    WebClass classify() const;
    MultiplicityProfile multiplicity_profile(const std::vector<MPoly>& factors) const;

    std::string render() const; // .swt text
    static SymWeb parse(std::string_view swt_text);

private:
    Field f_;
    int m_, n_;
    std::vector<Mat> mats_;
};

// Exact determinant of a square polynomial matrix, by dynamic-programming
// Laplace expansion over column subsets. Size capped at 12.
MPoly poly_det(const PolyMat& M);

} // namespace symweb

#endif
