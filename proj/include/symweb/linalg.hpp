#ifndef SYMWEB_LINALG_HPP
#define SYMWEB_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "symweb/field.hpp"

namespace symweb {

// Dense matrix of exact field elements.
class Mat {
public:
    Mat(Field f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static Mat identity(Field f, std::size_t n);

    Field field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat transpose() const;
    Mat scaled(const Scalar& c) const;
    bool operator==(const Mat& o) const;

    bool is_zero() const;
    bool is_symmetric() const;
    // aI_n for some scalar a; returns a if so
    std::optional<Scalar> scalar_multiple_of_identity() const;

    Scalar det() const;
    std::size_t rank() const;
    std::optional<Mat> inverse() const; // nullopt when singular

    // Reduced row echelon form in place; returns pivot column indices.
    std::vector<std::size_t> rref();

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_linear(const Mat& A, const std::vector<Scalar>& b);

// Basis of the right kernel {x : A x = 0}.
std::vector<std::vector<Scalar>> kernel_basis(const Mat& A);

} // namespace symweb

#endif
