#ifndef PSEP_MATRIX_HPP
#define PSEP_MATRIX_HPP

#include "psep/rational.hpp"

#include <string>
#include <vector>

namespace psep {

/// Dense matrix over the exact rationals. Row-major storage.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static RationalMatrix identity(int n);
    /// Builds from a row-major list of "p"/"p/q" strings.
    static RationalMatrix from_strings(int rows, int cols, const std::vector<std::string>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix transpose() const;
    bool operator==(const RationalMatrix& o) const = default;

    Rational determinant() const;           // square only
    RationalMatrix inverse() const;         // throws ValidationError if singular

    void swap_rows(int a, int b);
    void scale_row(int i, const Rational& s);
    /// row[target] += s * row[source]
    void add_scaled_row(int target, int source, const Rational& s);
    void swap_cols(int a, int b);
    void scale_col(int j, const Rational& s);
    void add_scaled_col(int target, int source, const Rational& s);

    std::vector<std::string> to_strings() const; // row-major "p"/"p/q"
    std::vector<double> to_doubles() const;      // row-major

private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

/// The constant skew-symmetric coefficient matrix A. Construction validates
/// A = -A^T exactly and reports every offending entry pair.
class CoefficientMatrix {
public:
    explicit CoefficientMatrix(RationalMatrix m);

    int dim() const { return m_.rows(); }
    const Rational& at(int i, int j) const { return m_.at(i, j); }
    const RationalMatrix& matrix() const { return m_; }

    bool operator==(const CoefficientMatrix& o) const = default;

private:
    RationalMatrix m_;
};

} // namespace psep

#endif
