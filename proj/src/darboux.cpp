#include "psep/darboux.hpp"

#include "psep/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace psep {

DarbouxTransform::DarbouxTransform(SeparableStructure s)
    : s_(std::move(s)),
      cong_(skew_canonical_congruence(s_.coefficients())),
      p_inv_(cong_.P.inverse()) {
    p_d_ = cong_.P.to_doubles();
    p_inv_d_ = p_inv_.to_doubles();
    canonical_d_ = cong_.canonical.to_doubles();
}

Vec DarbouxTransform::forward(std::span<const double> x) const {
    s_.require_inside(x);
    const int n = s_.dim();
    Vec y(n);
    for (int i = 0; i < n; ++i)
        y[i] = s_.chart(i).forward(x[i]);
    Vec z(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z[i] += p_d_[static_cast<std::size_t>(i) * n + j] * y[j];
    return z;
}

Vec DarbouxTransform::inverse(std::span<const double> z) const {
    const int n = s_.dim();
    if (static_cast<int>(z.size()) != n)
        throw DomainError("point dimension " + std::to_string(z.size()) +
                          " does not match structure dimension " + std::to_string(n));
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            y[i] += p_inv_d_[static_cast<std::size_t>(i) * n + j] * z[j];
    Vec x(n);
    for (int i = 0; i < n; ++i) {
        Interval range = s_.chart(i).forward_range();
        if (!range.contains(y[i]))
            throw DomainError("coordinate " + std::to_string(i + 1) + ": value " +
                              std::to_string(y[i]) + " outside the chart range (" +
                              std::to_string(range.lo) + ", " + std::to_string(range.hi) + ")");
        x[i] = s_.chart(i).inverse(y[i]);
    }
    return x;
}

double DarbouxTransform::transformed_structure_check(std::span<const double> x) const {
    const int n = s_.dim();
    std::vector<double> J = s_.matrix_at(x);
    // B = diag(1/phi) * J * diag(1/phi); entrywise division keeps the exact
    // cancellation of the phi factors.
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i)
        phi[i] = s_.chart(i).value(x[i]);
    std::vector<double> b(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b[static_cast<std::size_t>(i) * n + j] =
                J[static_cast<std::size_t>(i) * n + j] / (phi[i] * phi[j]);
    // M = P * B * P^T
    std::vector<double> pb(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double pik = p_d_[static_cast<std::size_t>(i) * n + k];
            if (pik == 0.0)
                continue;
            for (int j = 0; j < n; ++j)
                pb[static_cast<std::size_t>(i) * n + j] += pik * b[static_cast<std::size_t>(k) * n + j];
        }
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double m = 0.0;
            for (int k = 0; k < n; ++k)
                m += pb[static_cast<std::size_t>(i) * n + k] * p_d_[static_cast<std::size_t>(j) * n + k];
            worst = std::max(worst, std::abs(m - canonical_d_[static_cast<std::size_t>(i) * n + j]));
        }
    return worst;
}

} // namespace psep
