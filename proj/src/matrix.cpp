#include "psep/matrix.hpp"

#include "psep/errors.hpp"

#include <utility>

namespace psep {

RationalMatrix RationalMatrix::identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::from_strings(int rows, int cols, const std::vector<std::string>& entries) {
    if (static_cast<std::size_t>(rows) * cols != entries.size())
        throw ValidationError("matrix entry count " + std::to_string(entries.size()) +
                              " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = Rational::from_string(entries[static_cast<std::size_t>(i) * cols + j]);
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_)
        throw ValidationError("matrix product dimension mismatch: " + std::to_string(cols_) +
                              " vs " + std::to_string(o.rows_));
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& aik = at(i, k);
            if (aik.is_zero())
                continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

Rational RationalMatrix::determinant() const {
    if (rows_ != cols_)
        throw ValidationError("determinant of a non-square matrix");
    RationalMatrix m = *this;
    Rational det(1);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int i = col; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0)
            return Rational(0);
        if (pivot != col) {
            m.swap_rows(pivot, col);
            det = -det;
        }
        det *= m.at(col, col);
        Rational inv = Rational(1) / m.at(col, col);
        for (int i = col + 1; i < rows_; ++i) {
            if (m.at(i, col).is_zero())
                continue;
            Rational f = -(m.at(i, col) * inv);
            m.add_scaled_row(i, col, f);
        }
    }
    return det;
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_)
        throw ValidationError("inverse of a non-square matrix");
    RationalMatrix m = *this;
    RationalMatrix inv = identity(rows_);
    for (int col = 0; col < cols_; ++col) {
        int pivot = -1;
        for (int i = col; i < rows_; ++i)
            if (!m.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0)
            throw ValidationError("matrix is singular");
        if (pivot != col) {
            m.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
        }
        Rational s = Rational(1) / m.at(col, col);
        m.scale_row(col, s);
        inv.scale_row(col, s);
        for (int i = 0; i < rows_; ++i) {
            if (i == col || m.at(i, col).is_zero())
                continue;
            Rational f = -m.at(i, col);
            m.add_scaled_row(i, col, f);
            inv.add_scaled_row(i, col, f);
        }
    }
    return inv;
}

void RationalMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j)
        std::swap(at(a, j), at(b, j));
}

void RationalMatrix::scale_row(int i, const Rational& s) {
    for (int j = 0; j < cols_; ++j)
        at(i, j) *= s;
}

void RationalMatrix::add_scaled_row(int target, int source, const Rational& s) {
    if (s.is_zero()) return;
    for (int j = 0; j < cols_; ++j)
        at(target, j) += s * at(source, j);
}

void RationalMatrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i)
        std::swap(at(i, a), at(i, b));
}

void RationalMatrix::scale_col(int j, const Rational& s) {
    for (int i = 0; i < rows_; ++i)
        at(i, j) *= s;
}

void RationalMatrix::add_scaled_col(int target, int source, const Rational& s) {
    if (s.is_zero()) return;
    for (int i = 0; i < rows_; ++i)
        at(i, target) += s * at(i, source);
}

std::vector<std::string> RationalMatrix::to_strings() const {
    std::vector<std::string> out;
    out.reserve(data_.size());
    for (const Rational& r : data_)
        out.push_back(r.str());
    return out;
}

std::vector<double> RationalMatrix::to_doubles() const {
    std::vector<double> out;
    out.reserve(data_.size());
    for (const Rational& r : data_)
        out.push_back(r.to_double());
    return out;
}

CoefficientMatrix::CoefficientMatrix(RationalMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw ValidationError("coefficient matrix must be square, got " +
                              std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
    std::string offenders;
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = i; j < m_.cols(); ++j)
            if (m_.at(i, j) != -m_.at(j, i)) {
                if (!offenders.empty())
                    offenders += ", ";
                offenders += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")=" +
                             m_.at(i, j).str() + " vs (" + std::to_string(j + 1) + "," +
                             std::to_string(i + 1) + ")=" + m_.at(j, i).str();
            }
    if (!offenders.empty())
        throw ValidationError("matrix is not skew-symmetric: " + offenders);
}

} // namespace psep
