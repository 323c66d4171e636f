#include "psep/casimir.hpp"

#include "psep/errors.hpp"
#include "psep/models.hpp"
#include "psep/numeric.hpp"
#include "psep/sampling.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace psep;

TEST_CASE("Toda has the single Casimir sum of betas") {
    SeparableStructure s = toda(2);
    CasimirSet set = casimir_set(s);
    REQUIRE(set.count() == 1);
    CHECK(set.items[0].coefficients() ==
          std::vector<Rational>{Rational(0), Rational(1), Rational(1)});
    CHECK(set.items[0].value(std::vector<double>{5.0, 2.0, 3.0}) == 5.0);
    CHECK(set.items[0].formula() == "1*x2 + 1*x3");

    for (int N = 2; N <= 6; ++N) {
        CasimirSet sn = casimir_set(toda(N));
        REQUIRE(sn.count() == 1);
        const auto& k = sn.items[0].coefficients();
        for (int i = 0; i < N - 1; ++i)
            CHECK(k[i] == Rational(0));
        for (int i = N - 1; i < 2 * N - 1; ++i)
            CHECK(k[i] == Rational(1));
    }
}

TEST_CASE("the 2x2 game has no Casimirs") {
    CHECK(casimir_set(two_by_two_game()).count() == 0);
}

TEST_CASE("cyclic LV Casimir is the sum of logs") {
    CasimirSet set = casimir_set(lotka_volterra(cyclic_lv_matrix()));
    REQUIRE(set.count() == 1);
    CHECK(set.items[0].formula() == "1*ln(x1) + 1*ln(x2) + 1*ln(x3)");
    CHECK(set.items[0].value(std::vector<double>{1.0, 1.0, 1.0}) == 0.0);
}

TEST_CASE("Kermack-McKendric Casimir") {
    CasimirSet set = casimir_set(kermack_mckendric(Rational(1), Rational(1)));
    REQUIRE(set.count() == 1);
    CHECK(set.items[0].coefficients() ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    CHECK(set.items[0].formula() == "1*ln(x1) + 1*x3");
}

TEST_CASE("circle map Casimir") {
    CasimirSet set = casimir_set(circle_map());
    REQUIRE(set.count() == 1);
    CHECK(set.items[0].coefficients() ==
          std::vector<Rational>{Rational(1), Rational(-1), Rational(0)});
    // C = -1/x1 + 1/x2 at (1, 2, anything)
    CHECK(set.items[0].value(std::vector<double>{1.0, 2.0, 1.0}) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(set.items[0].formula() == "1*(-1/x1) - 1*(-1/x2)");
}

TEST_CASE("J grad C vanishes for every zoo Casimir") {
    Rng rng(55);
    auto check = [&](const SeparableStructure& s) {
        CasimirSet set = casimir_set(s);
        CHECK(set.count() == s.dim() - rank(s.coefficients()));
        auto pts = sample_box(s.domain(), 100, rng.next());
        for (const CasimirFunction& c : set.items)
            for (const Vec& x : pts)
                CHECK(casimir_gradient_check(s, c, x) <= 1e-10);
    };
    check(lotka_volterra(cyclic_lv_matrix()));
    check(toda(2));
    check(toda(4));
    check(relativistic_toda(3));
    check(kermack_mckendric(Rational(1), Rational(1)));
    check(kermack_mckendric(Rational::from_string("2/3"), Rational::from_string("-5/2")));
    check(circle_map());
    check(two_by_two_game());
}

TEST_CASE("a corrupted kernel vector fails the gradient check") {
    SeparableStructure lv = lotka_volterra(cyclic_lv_matrix());
    CasimirFunction bad({Rational(1), Rational(1), Rational(0)}, lv.charts(), lv.domain());
    CHECK(casimir_gradient_check(lv, bad, std::vector<double>{2.0, 3.0, 5.0}) > 0.1);
}

TEST_CASE("Casimir Jacobian has full row rank (functional independence)") {
    Rng rng(66);
    auto check = [&](const SeparableStructure& s) {
        CasimirSet set = casimir_set(s);
        if (set.count() == 0)
            return;
        auto pts = sample_box(s.domain(), 20, rng.next());
        for (const Vec& x : pts) {
            auto jac = casimir_jacobian(set, x, s.dim());
            CHECK(numerical_rank(jac, set.count(), s.dim()) == set.count());
        }
    };
    check(lotka_volterra(cyclic_lv_matrix()));
    check(toda(4));
    check(relativistic_toda(2));
    check(kermack_mckendric(Rational(2), Rational(3)));
    check(circle_map());

    // a random degenerate structure: pad a kernel by zero rows/columns
    RationalMatrix m(4, 4);
    m.at(0, 1) = Rational(3);
    m.at(1, 0) = Rational(-3);
    std::vector<ChartFunction> charts(4, ChartFunction::power(1));
    DomainBox box;
    box.intervals.assign(4, Interval{0.3, 1.6});
    SeparableStructure s(CoefficientMatrix(std::move(m)), std::move(charts), std::move(box));
    CasimirSet set = casimir_set(s);
    CHECK(set.count() == 2);
    check(s);
}

TEST_CASE("evaluation outside the domain fails") {
    SeparableStructure lv = lotka_volterra(cyclic_lv_matrix());
    CasimirSet set = casimir_set(lv);
    CHECK_THROWS_AS(set.items[0].value(std::vector<double>{-1.0, 1.0, 1.0}), DomainError);
}
