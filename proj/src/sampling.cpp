#include "psep/sampling.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace psep {

namespace {

// splitmix64, used to decorrelate nearby seeds.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::mt19937_64 eng(mix(seed));
    state_[0] = eng();
    state_[1] = eng();
    state_[2] = eng();
    state_[3] = eng();
}

std::uint64_t Rng::next() {
    // xoshiro256** step; mt19937_64 above only whitens the seed.
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform01() {
    for (;;) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        if (u > 0.0)
            return u;
    }
}

double Rng::uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
}

Interval sampling_window(const Interval& iv) {
    bool lo_fin = std::isfinite(iv.lo), hi_fin = std::isfinite(iv.hi);
    if (lo_fin && hi_fin)
        return iv;
    if (lo_fin)
        return {iv.lo, iv.lo + 4.0};
    if (hi_fin)
        return {iv.hi - 4.0, iv.hi};
    return {-2.0, 2.0};
}

std::vector<Vec> sample_box(const DomainBox& box, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Interval> windows;
    windows.reserve(box.intervals.size());
    for (const Interval& iv : box.intervals)
        windows.push_back(sampling_window(iv));
    std::vector<Vec> points(static_cast<std::size_t>(count));
    for (auto& p : points) {
        p.resize(windows.size());
        for (std::size_t i = 0; i < windows.size(); ++i)
            p[i] = rng.uniform(windows[i].lo, windows[i].hi);
    }
    return points;
}

namespace {

double guard(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

} // namespace

double max_over_points(const std::vector<Vec>& points, const PointFn& f) {
    const long count = static_cast<long>(points.size());
    double best = -std::numeric_limits<double>::infinity();
    std::exception_ptr error;
    long error_index = count;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (long i = 0; i < count; ++i) {
        try {
            double v = guard(f(points[static_cast<std::size_t>(i)]));
            if (v > best)
                best = v;
        } catch (...) {
#pragma omp critical(psep_sampling_error)
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    }
    if (error)
        std::rethrow_exception(error);
    return best;
}

double max_over_points_serial(const std::vector<Vec>& points, const PointFn& f) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec& p : points) {
        double v = guard(f(p));
        if (v > best)
            best = v;
    }
    return best;
}

} // namespace psep
