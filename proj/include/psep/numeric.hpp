#ifndef PSEP_NUMERIC_HPP
#define PSEP_NUMERIC_HPP

#include <vector>

namespace psep {

/// Numerical rank of a row-major rows x cols matrix: number of singular
/// values above rel_threshold * sigma_max.
int numerical_rank(const std::vector<double>& m, int rows, int cols, double rel_threshold = 1e-10);

} // namespace psep

#endif
