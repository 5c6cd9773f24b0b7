#include "symweb/linalg.hpp"

namespace symweb {

Mat Mat::identity(Field f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix dimension mismatch");
    Mat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix dimension mismatch");
    Mat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix dimension mismatch");
    Mat r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
        }
    return r;
}

Mat Mat::transpose() const {
    Mat r(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    Mat r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (!(at(i, j) == at(j, i))) return false;
    return true;
}

std::optional<Scalar> Mat::scalar_multiple_of_identity() const {
    if (rows_ != cols_ || rows_ == 0) return std::nullopt;
    const Scalar& a = at(0, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !(at(i, j) == a) : !at(i, j).is_zero()) return std::nullopt;
        }
    return a;
}

std::vector<std::size_t> Mat::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t piv = row;
        while (piv < rows_ && at(piv, col).is_zero()) ++piv;
        if (piv == rows_) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
        Scalar inv = at(row, col).inverse();
        for (std::size_t j = col; j < cols_; ++j) at(row, j) = at(row, j) * inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || at(i, col).is_zero()) continue;
            Scalar c = at(i, col);
            for (std::size_t j = col; j < cols_; ++j)
                at(i, j) = at(i, j) - c * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Scalar Mat::det() const {
    if (rows_ != cols_) throw DomainError("determinant of non-square matrix");
    Mat w(*this);
    Scalar d = Scalar::one(f_);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t piv = col;
        while (piv < rows_ && w.at(piv, col).is_zero()) ++piv;
        if (piv == rows_) return Scalar::zero(f_);
        if (piv != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(w.at(piv, j), w.at(col, j));
            d = -d;
        }
        d = d * w.at(col, col);
        Scalar inv = w.at(col, col).inverse();
        for (std::size_t i = col + 1; i < rows_; ++i) {
            if (w.at(i, col).is_zero()) continue;
            Scalar c = w.at(i, col) * inv;
            for (std::size_t j = col; j < cols_; ++j)
                w.at(i, j) = w.at(i, j) - c * w.at(col, j);
        }
    }
    return d;
}

std::size_t Mat::rank() const {
    Mat w(*this);
    return w.rref().size();
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) throw DomainError("inverse of non-square matrix");
    Mat aug(f_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Scalar::one(f_);
    }
    auto piv = aug.rref();
    if (piv.size() != rows_ || piv.back() >= cols_) return std::nullopt;
    Mat inv(f_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

std::optional<std::vector<Scalar>> solve_linear(const Mat& A, const std::vector<Scalar>& b) {
    if (b.size() != A.rows()) throw DomainError("solve dimension mismatch");
    Field f = A.field();
    Mat aug(f, A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt; // inconsistent
    std::vector<Scalar> x(A.cols(), Scalar::zero(f));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, A.cols());
    return x;
}

std::vector<std::vector<Scalar>> kernel_basis(const Mat& A) {
    Field f = A.field();
    Mat w(A);
    auto piv = w.rref();
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < A.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(A.cols(), Scalar::zero(f));
        v[free] = Scalar::one(f);
        for (std::size_t r = 0; r < piv.size(); ++r)
            v[piv[r]] = -w.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace symweb
