#ifndef PSEP_DARBOUX_HPP
#define PSEP_DARBOUX_HPP

#include "psep/structure.hpp"

#include <vector>

namespace psep {

/// The explicit global reduction z = P * F(x): the per-coordinate chart step
/// y_i = F_i(x_i) flattens J to the constant matrix A, then the exact
/// congruence P brings A to diag(D, ..., D, 0, ..., 0). P, its inverse, and
/// the canonical matrix are exact rationals; the maps run in doubles.
class DarbouxTransform {
public:
    explicit DarbouxTransform(SeparableStructure s);

    const SeparableStructure& structure() const { return s_; }
    const RationalMatrix& P() const { return cong_.P; }
    const RationalMatrix& P_inverse() const { return p_inv_; }
    const RationalMatrix& canonical() const { return cong_.canonical; }
    int rank() const { return cong_.rank; }

    /// z = P * (F_1(x_1), ..., F_n(x_n)); x must lie in the domain box.
    Vec forward(std::span<const double> x) const;

    /// x with forward(x) = z: exact P^-1 then per-coordinate chart inverse.
    /// Throws DomainError naming the first coordinate whose chart range does
    /// not contain the requested value.
    Vec inverse(std::span<const double> z) const;

    /// Max-norm of Dz(x) * J(x) * Dz(x)^T - canonical, where the chart-step
    /// Jacobian is the analytic diag(1/phi_i(x_i)).
    double transformed_structure_check(std::span<const double> x) const;

private:
    SeparableStructure s_;
    CongruenceResult cong_;
    RationalMatrix p_inv_;
    std::vector<double> p_d_, p_inv_d_, canonical_d_; // double copies, row-major
};

} // namespace psep

#endif
