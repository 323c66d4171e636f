#ifndef PSEP_TEST_UTIL_HPP
#define PSEP_TEST_UTIL_HPP

#include "psep/charts.hpp"
#include "psep/matrix.hpp"
#include "psep/sampling.hpp"
#include "psep/structure.hpp"

#include <vector>

namespace testutil {

using namespace psep;

// p/q with p in [-limit, limit], q in {1, 2, 3}.
inline Rational random_rational(Rng& rng, int limit = 5) {
    long long p = static_cast<long long>(rng.next() % (2 * limit + 1)) - limit;
    long long q = static_cast<long long>(rng.next() % 3) + 1;
    return Rational(BigInt(p), BigInt(q));
}

inline CoefficientMatrix random_skew(Rng& rng, int n, int limit = 5) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rational v = random_rational(rng, limit);
            m.at(i, j) = v;
            m.at(j, i) = -v;
        }
    return CoefficientMatrix(std::move(m));
}

inline CoefficientMatrix random_skew_integer(Rng& rng, int n, int limit = 5) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long p = static_cast<long long>(rng.next() % (2 * limit + 1)) - limit;
            m.at(i, j) = Rational(p);
            m.at(j, i) = Rational(-p);
        }
    return CoefficientMatrix(std::move(m));
}

// Random invertible matrix: unit triangular factors with small integer
// entries times a permutation, so the determinant is +-1.
inline RationalMatrix random_invertible(Rng& rng, int n) {
    RationalMatrix lower = RationalMatrix::identity(n);
    RationalMatrix upper = RationalMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            lower.at(i, j) = Rational(static_cast<long long>(rng.next() % 5) - 2);
            upper.at(j, i) = Rational(static_cast<long long>(rng.next() % 5) - 2);
        }
    RationalMatrix perm(n, n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[rng.next() % (i + 1)]);
    for (int i = 0; i < n; ++i)
        perm.at(i, order[i]) = Rational(1);
    return lower * perm * upper;
}

// A random chart family together with a tame domain interval on which the
// acceptance tolerances hold comfortably.
struct TamedChart {
    ChartFunction chart;
    Interval domain;
};

inline TamedChart random_chart(Rng& rng) {
    switch (rng.next() % 6) {
    case 0: {
        int k = 1 + static_cast<int>(rng.next() % 3);
        return {ChartFunction::power(k), Interval{0.3, 1.6}};
    }
    case 1: {
        static const long long nums[] = {1, 2, -1, -2, 1, 3};
        long long c = nums[rng.next() % 6];
        return {ChartFunction::constant(Rational(c)), Interval{-0.8, 0.8}};
    }
    case 2: {
        static const long long as[] = {1, 2, -1, -2};
        long long a = as[rng.next() % 4];
        long long b = static_cast<long long>(rng.next() % 3) - 1;
        ChartFunction c = ChartFunction::affine(Rational(a), Rational(b));
        double root = -static_cast<double>(b) / static_cast<double>(a);
        Interval dom = a > 0 ? Interval{root + 0.2, root + 1.4} : Interval{root - 1.4, root - 0.2};
        return {c, dom};
    }
    case 3:
        return {ChartFunction::logistic(), Interval{0.15, 0.85}};
    case 4: {
        static const char* ls[] = {"1", "-1", "1/2", "-1/2"};
        return {ChartFunction::exponential(Rational::from_string(ls[rng.next() % 4])),
                Interval{-0.9, 0.9}};
    }
    default:
        return {ChartFunction::custom("1 + x1^2", Interval{-2.0, 2.0}), Interval{-1.0, 1.0}};
    }
}

// Random separable structure whose domain box is already a tame sampling
// window.
inline SeparableStructure random_structure(Rng& rng, int n) {
    CoefficientMatrix a = random_skew(rng, n);
    std::vector<ChartFunction> charts;
    DomainBox box;
    for (int i = 0; i < n; ++i) {
        TamedChart t = random_chart(rng);
        charts.push_back(t.chart);
        box.intervals.push_back(t.domain);
    }
    return SeparableStructure(std::move(a), std::move(charts), std::move(box));
}

inline std::vector<Rational> mat_vec(const RationalMatrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[i] += m.at(i, j) * v[j];
    return out;
}

} // namespace testutil

#endif
