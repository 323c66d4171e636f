#ifndef PSEP_STRUCTURE_HPP
#define PSEP_STRUCTURE_HPP

#include "psep/charts.hpp"
#include "psep/exact_linalg.hpp"
#include "psep/matrix.hpp"

#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace psep {

using Vec = std::vector<double>;

/// Product of open intervals, one per coordinate.
struct DomainBox {
    std::vector<Interval> intervals;

    int dim() const { return static_cast<int>(intervals.size()); }
    bool contains(std::span<const double> x) const;
};

/// The separable structure matrix J^ij(x) = a^ij phi_i(x_i) phi_j(x_j).
/// Construction validates skew-symmetry of A, dimension agreement, and that
/// each domain interval sits inside the chart's nonvanishing interval.
class SeparableStructure {
public:
    SeparableStructure(CoefficientMatrix A, std::vector<ChartFunction> charts, DomainBox domain);

    int dim() const { return A_.dim(); }
    const CoefficientMatrix& coefficients() const { return A_; }
    const ChartFunction& chart(int i) const { return charts_[i]; }
    const std::vector<ChartFunction>& charts() const { return charts_; }
    const DomainBox& domain() const { return domain_; }

    void require_inside(std::span<const double> x) const; // throws DomainError

    /// J(x), row-major n*n. Throws DomainError outside the domain box.
    std::vector<double> matrix_at(std::span<const double> x) const;

    /// Max over index triples i<j<k of the Jacobi sum, with the derivative
    /// of J taken in closed form: d_l J^jk = a^jk (delta_lj phi_j' phi_k +
    /// delta_lk phi_j phi_k').
    double jacobi_residual_analytic(std::span<const double> x) const;

private:
    CoefficientMatrix A_;
    std::vector<ChartFunction> charts_;
    DomainBox domain_;
    std::vector<double> a_; // A as doubles, row-major
};

/// Arbitrary candidate structure matrix: an entry evaluator. This is the
/// object under test for the finite-difference Jacobi verifier; no structure
/// is assumed beyond evaluability.
struct MatrixField {
    int n = 0;
    std::function<double(int i, int j, std::span<const double> x)> entry; // 0-based

    static MatrixField from_structure(const SeparableStructure& s);
    /// Upper-triangle expressions (1-based index pairs, i < j), completed to
    /// a skew-symmetric field; missing pairs are zero.
    static MatrixField from_expressions(int n, const std::map<std::pair<int, int>, ExprPtr>& upper);

    std::vector<double> matrix_at(std::span<const double> x) const;
};

/// Jacobi residual of a general field at x with d_l approximated by central
/// differences of step h; max over index triples i<j<k.
double jacobi_residual_fd(const MatrixField& f, std::span<const double> x, double h);

} // namespace psep

#endif
