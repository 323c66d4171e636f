#ifndef PSEP_EXACT_LINALG_HPP
#define PSEP_EXACT_LINALG_HPP

#include "psep/matrix.hpp"

#include <vector>

namespace psep {

/// Basis of Ker(A). Vectors are normalized to coprime integer entries with
/// the first nonzero entry positive, so output is stable for golden files.
struct KernelBasis {
    std::vector<std::vector<Rational>> vectors;

    int count() const { return static_cast<int>(vectors.size()); }
};

/// Invertible P with P*A*P^T = canonical = diag(D_1,...,D_{r/2}, 0,...,0),
/// D = [[0,1],[-1,0]], all exact.
struct CongruenceResult {
    RationalMatrix P;
    int rank = 0;
    RationalMatrix canonical;
};

/// Exact nullspace of A via reduced row echelon form. Full-rank A yields an
/// empty basis. Deterministic: pivot is the first nonzero entry in row-major
/// scan order.
KernelBasis kernel_basis(const CoefficientMatrix& A);

/// Exact rank via row echelon form.
int rank(const CoefficientMatrix& A);

/// Skew-symmetric congruence canonical form by symmetric-pair elimination:
/// pick the first nonzero pivot pair in row-major scan, move it to the
/// leading block, scale it to [[0,1],[-1,0]], clear the remaining rows and
/// columns by matching row+column operations, recurse on the trailing block.
CongruenceResult skew_canonical_congruence(const CoefficientMatrix& A);

/// P * A * P^T, exact. Throws ValidationError on dimension mismatch.
CoefficientMatrix congruence_apply(const RationalMatrix& P, const CoefficientMatrix& A);

} // namespace psep

#endif
