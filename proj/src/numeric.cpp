#include "psep/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace psep {

int numerical_rank(const std::vector<double>& m, int rows, int cols, double rel_threshold) {
    Eigen::MatrixXd a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a(i, j) = m[static_cast<std::size_t>(i) * cols + j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0)
        return 0;
    double cutoff = rel_threshold * sigma(0);
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff)
            ++rank;
    return rank;
}

} // namespace psep
