#include "psep/structure.hpp"

#include "psep/errors.hpp"
#include "psep/models.hpp"
#include "psep/numeric.hpp"
#include "psep/sampling.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace psep;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeparableStructure constant_structure() {
    RationalMatrix m(2, 2);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(-1);
    std::vector<ChartFunction> charts(2, ChartFunction::constant(Rational(1)));
    DomainBox box;
    box.intervals = {{-kInf, kInf}, {-kInf, kInf}};
    return SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
}

} // namespace

TEST_CASE("build validations") {
    CHECK_NOTHROW(lotka_volterra(cyclic_lv_matrix()));

    RationalMatrix bad(2, 2);
    bad.at(0, 1) = Rational(1);
    bad.at(1, 0) = Rational(1);
    CHECK_THROWS_AS(CoefficientMatrix(std::move(bad)), ValidationError);

    // logistic chart vanishes at 1, so a domain reaching past it is invalid
    RationalMatrix m(2, 2);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(-1);
    std::vector<ChartFunction> charts(2, ChartFunction::logistic());
    DomainBox box;
    box.intervals = {{0.0, 2.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(
        SeparableStructure(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box)),
        ValidationError);

    // dimension mismatches
    RationalMatrix m3(3, 3);
    m3.at(0, 1) = Rational(1);
    m3.at(1, 0) = Rational(-1);
    std::vector<ChartFunction> two(2, ChartFunction::power(1));
    DomainBox box3;
    box3.intervals.assign(3, Interval{0.0, kInf});
    CHECK_THROWS_AS(
        SeparableStructure(CoefficientMatrix(std::move(m3)), std::move(two), std::move(box3)),
        ValidationError);
}

TEST_CASE("structure matrix values") {
    SeparableStructure games = two_by_two_game();
    std::vector<double> j = games.matrix_at(std::vector<double>{0.5, 0.5});
    CHECK(j[0 * 2 + 1] == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(j[1 * 2 + 0] == doctest::Approx(-1.0 / 16.0).epsilon(1e-15));

    SeparableStructure cs = constant_structure();
    std::vector<double> jc = cs.matrix_at(std::vector<double>{17.0, -4.0});
    CHECK(jc[0 * 2 + 1] == 1.0);
    CHECK(jc[1 * 2 + 0] == -1.0);

    SeparableStructure km = kermack_mckendric(Rational(1), Rational(1));
    std::vector<double> jk = km.matrix_at(std::vector<double>{2.0, 3.0, 5.0});
    CHECK(jk[0 * 3 + 1] == -6.0);
    CHECK(jk[1 * 3 + 2] == -3.0);
    CHECK(jk[0 * 3 + 2] == 0.0);

    CHECK_THROWS_AS(games.matrix_at(std::vector<double>{0.5, 1.5}), DomainError);
}

TEST_CASE("skew-symmetry of evaluated matrices") {
    Rng rng(5);
    for (int it = 0; it < 20; ++it) {
        SeparableStructure s = testutil::random_structure(rng, 2 + static_cast<int>(rng.next() % 5));
        auto pts = sample_box(s.domain(), 10, rng.next());
        for (const Vec& x : pts) {
            std::vector<double> j = s.matrix_at(x);
            const int n = s.dim();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    CHECK(std::abs(j[a * n + b] + j[b * n + a]) <= 1e-14);
        }
    }
}

TEST_CASE("analytic Jacobi residual vanishes for separable structures") {
    SeparableStructure cs = constant_structure();
    CHECK(cs.jacobi_residual_analytic(std::vector<double>{3.0, 4.0}) == 0.0);

    SeparableStructure circle = circle_map();
    CHECK(circle.jacobi_residual_analytic(std::vector<double>{1.0, 1.0, 1.0}) <= 1e-10);

    Rng rng(31);
    for (int it = 0; it < 50; ++it) {
        int n = 2 + static_cast<int>(rng.next() % 5); // 2..6
        SeparableStructure s = testutil::random_structure(rng, n);
        auto pts = sample_box(s.domain(), 50, rng.next());
        for (const Vec& x : pts)
            CHECK(s.jacobi_residual_analytic(x) <= 1e-10);
    }
}

TEST_CASE("finite-difference residual agrees with the analytic one") {
    SeparableStructure lv = lotka_volterra(cyclic_lv_matrix());
    MatrixField f = MatrixField::from_structure(lv);
    Vec x = {1.0, 2.0, 3.0};
    CHECK(jacobi_residual_fd(f, x, 1e-5) <= 1e-8);
    CHECK(std::abs(jacobi_residual_fd(f, x, 1e-5) - lv.jacobi_residual_analytic(x)) <= 1e-7);
}

TEST_CASE("negative control: a skew field that is not Poisson") {
    // J12 = x3, J13 = x2, J23 = x3; the (1,2,3) Jacobi sum is -x2.
    std::map<std::pair<int, int>, ExprPtr> upper;
    upper[{1, 2}] = parse("x3", 3);
    upper[{1, 3}] = parse("x2", 3);
    upper[{2, 3}] = parse("x3", 3);
    MatrixField f = MatrixField::from_expressions(3, upper);
    Vec x = {1.0, 2.0, 3.0};
    CHECK(f.entry(1, 0, x) == -3.0); // skew completion
    CHECK(std::abs(jacobi_residual_fd(f, x, 1e-5) - 2.0) <= 1e-4);
}

TEST_CASE("so(3)-type field satisfies Jacobi though not separable") {
    std::map<std::pair<int, int>, ExprPtr> upper;
    upper[{1, 2}] = parse("x3", 3);
    upper[{2, 3}] = parse("x1", 3);
    upper[{1, 3}] = parse("-x2", 3); // J31 = x2
    MatrixField f = MatrixField::from_expressions(3, upper);
    Rng rng(8);
    for (int it = 0; it < 10; ++it) {
        Vec x = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(jacobi_residual_fd(f, x, 1e-5) <= 1e-8);
    }
}

TEST_CASE("field expression validation") {
    std::map<std::pair<int, int>, ExprPtr> upper;
    upper[{2, 1}] = parse("x1", 3);
    CHECK_THROWS_AS(MatrixField::from_expressions(3, upper), ValidationError);
    upper.clear();
    upper[{1, 4}] = parse("x1", 3);
    CHECK_THROWS_AS(MatrixField::from_expressions(3, upper), ValidationError);
}

TEST_CASE("rank of J(x) equals rank of A across the domain") {
    Rng rng(77);
    auto check_model = [&](const SeparableStructure& s) {
        int expected = rank(s.coefficients());
        auto pts = sample_box(s.domain(), 20, rng.next());
        for (const Vec& x : pts) {
            std::vector<double> j = s.matrix_at(x);
            CHECK(numerical_rank(j, s.dim(), s.dim()) == expected);
        }
    };
    check_model(lotka_volterra(cyclic_lv_matrix()));
    check_model(toda(3));
    check_model(kermack_mckendric(Rational(1), Rational(2)));
    check_model(circle_map());
    check_model(two_by_two_game());
    check_model(testutil::random_structure(rng, 5));
}
