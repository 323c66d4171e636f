#ifndef PSEP_CASIMIR_HPP
#define PSEP_CASIMIR_HPP

#include "psep/structure.hpp"

#include <string>
#include <vector>

namespace psep {

/// C(x) = sum_j k_j F_j(x_j) for a kernel vector k of A. The gradient is the
/// closed form k_j / phi_j(x_j); no differencing anywhere. Evaluation
/// requires x inside the structure's domain box.
class CasimirFunction {
public:
    CasimirFunction(std::vector<Rational> coefficients, std::vector<ChartFunction> charts,
                    DomainBox domain);

    const std::vector<Rational>& coefficients() const { return k_; }

    double value(std::span<const double> x) const;
    Vec gradient(std::span<const double> x) const;

    /// e.g. "1*ln(x1) + 1*x3"; zero-coefficient terms are omitted.
    std::string formula() const;

private:
    void require_inside(std::span<const double> x) const;

    std::vector<Rational> k_;
    std::vector<ChartFunction> charts_;
    DomainBox domain_;
};

struct CasimirSet {
    std::vector<CasimirFunction> items;

    int count() const { return static_cast<int>(items.size()); }
};

/// One Casimir per kernel basis vector of A; empty for full-rank A.
/// Deterministic given the normalized kernel basis.
CasimirSet casimir_set(const SeparableStructure& s);

/// Max-norm of J(x) * grad C(x).
double casimir_gradient_check(const SeparableStructure& s, const CasimirFunction& c,
                              std::span<const double> x);

/// Row-major m x n Jacobian of the set at x (rows k_i^j / phi_j(x_j)); its
/// numerical rank m certifies functional independence.
std::vector<double> casimir_jacobian(const CasimirSet& set, std::span<const double> x, int n);

} // namespace psep

#endif
