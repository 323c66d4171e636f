#include "psep/structure.hpp"

#include "psep/errors.hpp"

#include <cmath>
#include <string>

namespace psep {

bool DomainBox::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim())
        return false;
    for (int i = 0; i < dim(); ++i)
        if (!intervals[i].contains(x[i]))
            return false;
    return true;
}

SeparableStructure::SeparableStructure(CoefficientMatrix A, std::vector<ChartFunction> charts,
                                       DomainBox domain)
    : A_(std::move(A)), charts_(std::move(charts)), domain_(std::move(domain)) {
    const int n = A_.dim();
    if (static_cast<int>(charts_.size()) != n)
        throw ValidationError("expected " + std::to_string(n) + " charts, got " +
                              std::to_string(charts_.size()));
    if (domain_.dim() != n)
        throw ValidationError("expected a " + std::to_string(n) + "-dimensional domain box, got " +
                              std::to_string(domain_.dim()));
    for (int i = 0; i < n; ++i) {
        if (!(domain_.intervals[i].lo < domain_.intervals[i].hi))
            throw ValidationError("domain interval " + std::to_string(i + 1) +
                                  " must satisfy lo < hi");
        if (!charts_[i].interval().contains(domain_.intervals[i]))
            throw ValidationError(
                "domain interval " + std::to_string(i + 1) + " = (" +
                std::to_string(domain_.intervals[i].lo) + ", " +
                std::to_string(domain_.intervals[i].hi) +
                ") is not contained in the chart's nonvanishing interval (" +
                std::to_string(charts_[i].interval().lo) + ", " +
                std::to_string(charts_[i].interval().hi) + ")");
    }
    a_ = A_.matrix().to_doubles();
}

void SeparableStructure::require_inside(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim())
        throw DomainError("point dimension " + std::to_string(x.size()) +
                          " does not match structure dimension " + std::to_string(dim()));
    for (int i = 0; i < dim(); ++i)
        if (!domain_.intervals[i].contains(x[i]))
            throw DomainError("coordinate " + std::to_string(i + 1) + " = " +
                              std::to_string(x[i]) + " outside domain (" +
                              std::to_string(domain_.intervals[i].lo) + ", " +
                              std::to_string(domain_.intervals[i].hi) + ")");
}

std::vector<double> SeparableStructure::matrix_at(std::span<const double> x) const {
    require_inside(x);
    const int n = dim();
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i)
        phi[i] = charts_[i].value(x[i]);
    std::vector<double> J(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            J[static_cast<std::size_t>(i) * n + j] = a_[static_cast<std::size_t>(i) * n + j] * phi[i] * phi[j];
    return J;
}

double SeparableStructure::jacobi_residual_analytic(std::span<const double> x) const {
    require_inside(x);
    const int n = dim();
    std::vector<double> phi(n), dphi(n);
    for (int i = 0; i < n; ++i) {
        phi[i] = charts_[i].value(x[i]);
        dphi[i] = charts_[i].derivative(x[i]);
    }
    auto a = [&](int i, int j) { return a_[static_cast<std::size_t>(i) * n + j]; };
    auto J = [&](int i, int j) { return a(i, j) * phi[i] * phi[j]; };
    auto dJ = [&](int l, int j, int k) {
        double v = 0.0;
        if (l == j)
            v += dphi[j] * phi[k];
        if (l == k)
            v += phi[j] * dphi[k];
        return a(j, k) * v;
    };
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l)
                    sum += J(l, i) * dJ(l, j, k) + J(l, j) * dJ(l, k, i) + J(l, k) * dJ(l, i, j);
                worst = std::max(worst, std::abs(sum));
            }
    return worst;
}

MatrixField MatrixField::from_structure(const SeparableStructure& s) {
    MatrixField f;
    f.n = s.dim();
    f.entry = [s](int i, int j, std::span<const double> x) {
        return s.matrix_at(x)[static_cast<std::size_t>(i) * s.dim() + j];
    };
    return f;
}

MatrixField MatrixField::from_expressions(int n, const std::map<std::pair<int, int>, ExprPtr>& upper) {
    for (const auto& [ij, e] : upper) {
        if (ij.first < 1 || ij.second < 1 || ij.first > n || ij.second > n)
            throw ValidationError("field entry index (" + std::to_string(ij.first) + "," +
                                  std::to_string(ij.second) + ") out of range for dimension " +
                                  std::to_string(n));
        if (ij.first >= ij.second)
            throw ValidationError("field entries must be given for the upper triangle (i < j), got (" +
                                  std::to_string(ij.first) + "," + std::to_string(ij.second) + ")");
        if (max_variable_index(*e) > n)
            throw ValidationError("field entry (" + std::to_string(ij.first) + "," +
                                  std::to_string(ij.second) + ") references a variable beyond x" +
                                  std::to_string(n));
    }
    MatrixField f;
    f.n = n;
    f.entry = [upper](int i, int j, std::span<const double> x) -> double {
        if (i == j)
            return 0.0;
        bool flip = i > j;
        auto it = upper.find(flip ? std::make_pair(j + 1, i + 1) : std::make_pair(i + 1, j + 1));
        if (it == upper.end())
            return 0.0;
        double v = evaluate(*it->second, x);
        return flip ? -v : v;
    };
    return f;
}

std::vector<double> MatrixField::matrix_at(std::span<const double> x) const {
    std::vector<double> J(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            J[static_cast<std::size_t>(i) * n + j] = entry(i, j, x);
    return J;
}

double jacobi_residual_fd(const MatrixField& f, std::span<const double> x, double h) {
    if (static_cast<int>(x.size()) != f.n)
        throw DomainError("point dimension " + std::to_string(x.size()) +
                          " does not match field dimension " + std::to_string(f.n));
    if (!(h > 0.0))
        throw ValidationError("finite-difference step must be positive");
    const int n = f.n;
    std::vector<double> J = f.matrix_at(x);
    // dJ[l][i][j] by central differences.
    std::vector<double> dJ(static_cast<std::size_t>(n) * n * n);
    Vec shifted(x.begin(), x.end());
    for (int l = 0; l < n; ++l) {
        shifted[l] = x[l] + h;
        std::vector<double> plus = f.matrix_at(shifted);
        shifted[l] = x[l] - h;
        std::vector<double> minus = f.matrix_at(shifted);
        shifted[l] = x[l];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dJ[(static_cast<std::size_t>(l) * n + i) * n + j] =
                    (plus[static_cast<std::size_t>(i) * n + j] - minus[static_cast<std::size_t>(i) * n + j]) /
                    (2.0 * h);
    }
    auto Jv = [&](int i, int j) { return J[static_cast<std::size_t>(i) * n + j]; };
    auto dJv = [&](int l, int i, int j) {
        return dJ[(static_cast<std::size_t>(l) * n + i) * n + j];
    };
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                double sum = 0.0;
                for (int l = 0; l < n; ++l)
                    sum += Jv(l, i) * dJv(l, j, k) + Jv(l, j) * dJv(l, k, i) + Jv(l, k) * dJv(l, i, j);
                worst = std::max(worst, std::abs(sum));
            }
    return worst;
}

} // namespace psep
