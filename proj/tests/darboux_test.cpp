#include "psep/darboux.hpp"

#include "psep/errors.hpp"
#include "psep/models.hpp"
#include "psep/sampling.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace psep;
using testutil::mat_vec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeparableStructure constant_symplectic() {
    RationalMatrix m(2, 2);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(-1);
    std::vector<ChartFunction> charts(2, ChartFunction::constant(Rational(1)));
    DomainBox box;
    box.intervals = {{-kInf, kInf}, {-kInf, kInf}};
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
}

std::vector<SeparableStructure> zoo_structures() {
    std::vector<SeparableStructure> out;
    out.push_back(lotka_volterra(cyclic_lv_matrix()));
    out.push_back(toda(2));
    out.push_back(toda(3));
    out.push_back(relativistic_toda(2));
    out.push_back(kermack_mckendric(Rational(1), Rational(1)));
    out.push_back(circle_map());
    out.push_back(two_by_two_game());
    return out;
}

} // namespace

TEST_CASE("constant symplectic structure reduces to the identity") {
    DarbouxTransform t(constant_symplectic());
    CHECK(t.P() == RationalMatrix::identity(2));
    CHECK(t.rank() == 2);
    Vec x = {0.3, -1.7};
    Vec z = t.forward(x);
    CHECK(z[0] == x[0]);
    CHECK(z[1] == x[1]);
    Vec back = t.inverse(z);
    CHECK(back[0] == x[0]);
    CHECK(back[1] == x[1]);
    CHECK(t.transformed_structure_check(x) == 0.0);
}

TEST_CASE("games model needs only the chart step") {
    DarbouxTransform t(two_by_two_game());
    CHECK(t.P() == RationalMatrix::identity(2));
    Vec z = t.forward(std::vector<double>{0.5, 0.5});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    Vec x = t.inverse(std::vector<double>{0.0, 0.0});
    CHECK(x[0] == 0.5);
    CHECK(x[1] == 0.5);
    // z_i = ln(x_i / (1 - x_i))
    Vec z2 = t.forward(std::vector<double>{0.25, 0.8});
    CHECK(z2[0] == doctest::Approx(std::log(0.25 / 0.75)).epsilon(1e-14));
    CHECK(z2[1] == doctest::Approx(std::log(0.8 / 0.2)).epsilon(1e-14));
}

TEST_CASE("cyclic LV reduction") {
    DarbouxTransform t(lotka_volterra(cyclic_lv_matrix()));
    CHECK(t.rank() == 2);
    Vec z = t.forward(std::vector<double>{1.0, 1.0, 1.0});
    CHECK(z[0] == 0.0);
    CHECK(z[1] == 0.0);
    CHECK(z[2] == 0.0);
    // rows beyond the rank are kernel vectors of A
    const RationalMatrix& p = t.P();
    for (int row = t.rank(); row < 3; ++row) {
        std::vector<Rational> v = {p.at(row, 0), p.at(row, 1), p.at(row, 2)};
        auto image = mat_vec(t.structure().coefficients().matrix(), v);
        for (const Rational& r : image)
            CHECK(r.is_zero());
    }
}

TEST_CASE("forward/inverse round-trips on every zoo model") {
    Rng rng(202);
    for (const SeparableStructure& s : zoo_structures()) {
        DarbouxTransform t(s);
        auto pts = sample_box(s.domain(), 100, rng.next());
        for (const Vec& x : pts) {
            Vec z = t.forward(x);
            Vec back = t.inverse(z);
            for (int i = 0; i < s.dim(); ++i)
                CHECK(std::abs(back[i] - x[i]) <= 1e-10 * std::max(1.0, std::abs(x[i])));
        }
    }
}

TEST_CASE("transformed structure equals the canonical matrix globally") {
    Rng rng(303);
    for (const SeparableStructure& s : zoo_structures()) {
        DarbouxTransform t(s);
        auto pts = sample_box(s.domain(), 100, rng.next());
        PointFn f = [&t](const Vec& x) { return t.transformed_structure_check(x); };
        CHECK(max_over_points(pts, f) <= 1e-10);
    }
}

TEST_CASE("chart step alone flattens J to A") {
    Rng rng(404);
    SeparableStructure s = testutil::random_structure(rng, 5);
    auto pts = sample_box(s.domain(), 50, rng.next());
    const int n = s.dim();
    for (const Vec& x : pts) {
        std::vector<double> j = s.matrix_at(x);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double phi_a = s.chart(a).value(x[a]);
                double phi_b = s.chart(b).value(x[b]);
                double flattened = j[a * n + b] / (phi_a * phi_b);
                CHECK(std::abs(flattened - s.coefficients().at(a, b).to_double()) <= 1e-12);
            }
    }
}

TEST_CASE("exact congruence for zoo models and random matrices") {
    for (const SeparableStructure& s : zoo_structures()) {
        CongruenceResult c = skew_canonical_congruence(s.coefficients());
        CHECK(c.P * s.coefficients().matrix() * c.P.transpose() == c.canonical);
        CHECK(c.rank % 2 == 0);
        CHECK(c.P.determinant() != Rational(0));
    }
    Rng rng(505);
    for (int it = 0; it < 40; ++it) {
        CoefficientMatrix a = testutil::random_skew(rng, 2 + static_cast<int>(rng.next() % 6));
        CongruenceResult c = skew_canonical_congruence(a);
        CHECK(c.P * a.matrix() * c.P.transpose() == c.canonical);
        CHECK(c.rank % 2 == 0);
        CHECK(c.P.determinant() != Rational(0));
    }
}

TEST_CASE("inverse reports the offending coordinate") {
    DarbouxTransform t(circle_map()); // chart ranges are (-inf, 0)
    // craft z = P * y with an out-of-range y
    const int n = 3;
    std::vector<double> y = {1.0, -1.0, -1.0}; // y1 > 0 unreachable for -1/x on (0, inf)
    std::vector<double> pd = t.P().to_doubles();
    Vec z(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            z[i] += pd[i * n + j] * y[j];
    CHECK_THROWS_WITH_AS(t.inverse(z), doctest::Contains("coordinate 1"), DomainError);
}
