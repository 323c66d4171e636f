#ifndef PSEP_SAMPLING_HPP
#define PSEP_SAMPLING_HPP

#include "psep/structure.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace psep {

/// Deterministic PRNG with a pinned uniform transform (independent of the
/// standard library's distribution implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    double uniform01();                    // in (0, 1)
    double uniform(double lo, double hi);  // in (lo, hi)

private:
    std::uint64_t state_[4];
};

/// Finite window used to draw samples from a possibly unbounded interval:
/// (lo,inf) -> (lo, lo+4), (-inf,hi) -> (hi-4, hi), R -> (-2, 2); finite
/// intervals are kept as they are. Narrow the model domain to steer this.
Interval sampling_window(const Interval& iv);

/// count points drawn uniformly from the sampling windows of the box.
std::vector<Vec> sample_box(const DomainBox& box, int count, std::uint64_t seed);

using PointFn = std::function<double(const Vec&)>;

/// Max of f over the points, OpenMP-parallel. Non-finite values of f are
/// treated as +inf so they cannot hide behind the max reduction. The
/// reduction is order-independent, so results are bit-identical to the
/// serial reference.
double max_over_points(const std::vector<Vec>& points, const PointFn& f);

/// Serial reference implementation of max_over_points.
double max_over_points_serial(const std::vector<Vec>& points, const PointFn& f);

} // namespace psep

#endif
