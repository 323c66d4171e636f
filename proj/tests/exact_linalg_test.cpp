#include "psep/exact_linalg.hpp"

#include "psep/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace psep;
using testutil::mat_vec;

namespace {

CoefficientMatrix from_rows(int n, const std::vector<std::vector<long long>>& rows) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = Rational(rows[i][j]);
    return CoefficientMatrix(std::move(m));
}

const CoefficientMatrix kTodaN2 = from_rows(3, {{0, -1, 1}, {1, 0, 0}, {-1, 0, 0}});
const CoefficientMatrix kSymplectic2 = from_rows(2, {{0, 1}, {-1, 0}});
const CoefficientMatrix kCyclicLV = from_rows(3, {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});

bool is_zero(const std::vector<Rational>& v) {
    for (const Rational& r : v)
        if (!r.is_zero())
            return false;
    return true;
}

} // namespace

TEST_CASE("coefficient matrix rejects non-skew input") {
    RationalMatrix m(2, 2);
    m.at(0, 1) = Rational(1);
    m.at(1, 0) = Rational(1);
    CHECK_THROWS_AS(CoefficientMatrix(std::move(m)), ValidationError);
}

TEST_CASE("kernel basis of the Toda N=2 matrix") {
    KernelBasis basis = kernel_basis(kTodaN2);
    REQUIRE(basis.count() == 1);
    CHECK(basis.vectors[0] == std::vector<Rational>{Rational(0), Rational(1), Rational(1)});
}

TEST_CASE("full-rank matrix has an empty kernel") {
    CHECK(kernel_basis(kSymplectic2).count() == 0);
    CHECK(rank(kSymplectic2) == 2);
}

TEST_CASE("kernel basis of the cyclic Lotka-Volterra matrix") {
    KernelBasis basis = kernel_basis(kCyclicLV);
    REQUIRE(basis.count() == 1);
    CHECK(basis.vectors[0] == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
}

TEST_CASE("congruence of an already canonical matrix is the identity") {
    CongruenceResult r = skew_canonical_congruence(kSymplectic2);
    CHECK(r.rank == 2);
    CHECK(r.P == RationalMatrix::identity(2));
    CHECK(r.canonical == kSymplectic2.matrix());
}

TEST_CASE("congruence scales a 2x2 block exactly") {
    CongruenceResult r = skew_canonical_congruence(from_rows(2, {{0, 2}, {-2, 0}}));
    CHECK(r.rank == 2);
    RationalMatrix expected = RationalMatrix::identity(2);
    expected.at(0, 0) = Rational(BigInt(1), BigInt(2));
    CHECK(r.P == expected);
    CHECK(congruence_apply(r.P, from_rows(2, {{0, 2}, {-2, 0}})).matrix() == r.canonical);
}

TEST_CASE("congruence of the cyclic LV matrix") {
    CongruenceResult r = skew_canonical_congruence(kCyclicLV);
    CHECK(r.rank == 2);
    RationalMatrix expected(3, 3);
    expected.at(0, 1) = Rational(1);
    expected.at(1, 0) = Rational(-1);
    CHECK(r.canonical == expected);
    CHECK(r.P * kCyclicLV.matrix() * r.P.transpose() == r.canonical);
    CHECK(r.P.determinant() != Rational(0));
}

TEST_CASE("congruence_apply basics") {
    CHECK(congruence_apply(RationalMatrix::identity(3), kCyclicLV) == kCyclicLV);
    CHECK_THROWS_AS(congruence_apply(RationalMatrix::identity(2), kCyclicLV), ValidationError);

    Rng rng(11);
    for (int it = 0; it < 20; ++it) {
        int n = 2 + static_cast<int>(rng.next() % 5);
        CoefficientMatrix a = testutil::random_skew(rng, n);
        RationalMatrix p = testutil::random_invertible(rng, n);
        CHECK(rank(congruence_apply(p, a)) == rank(a));
    }
}

TEST_CASE("randomized kernel and congruence properties") {
    Rng rng(7);
    for (int it = 0; it < 60; ++it) {
        int n = 2 + static_cast<int>(rng.next() % 7); // 2..8
        CoefficientMatrix a = testutil::random_skew_integer(rng, n);

        int r = rank(a);
        CHECK(r % 2 == 0);

        KernelBasis basis = kernel_basis(a);
        CHECK(basis.count() + r == n);
        for (const auto& k : basis.vectors) {
            CHECK(is_zero(mat_vec(a.matrix(), k)));
            // normalized: integer entries, first nonzero positive
            bool seen = false;
            for (const Rational& c : k) {
                CHECK(c.is_integer());
                if (!seen && !c.is_zero()) {
                    CHECK(c.sign() > 0);
                    seen = true;
                }
            }
            CHECK(seen);
        }

        CongruenceResult cong = skew_canonical_congruence(a);
        CHECK(cong.rank == r);
        CHECK(cong.P * a.matrix() * cong.P.transpose() == cong.canonical);
        CHECK(cong.P.determinant() != Rational(0));
        for (int b = 0; b < cong.rank; b += 2) {
            CHECK(cong.canonical.at(b, b + 1) == Rational(1));
            CHECK(cong.canonical.at(b + 1, b) == Rational(-1));
        }
    }
}

TEST_CASE("identical input gives identical output") {
    Rng rng(3);
    CoefficientMatrix a = testutil::random_skew(rng, 6);
    KernelBasis b1 = kernel_basis(a);
    KernelBasis b2 = kernel_basis(a);
    CHECK(b1.vectors == b2.vectors);
    CongruenceResult c1 = skew_canonical_congruence(a);
    CongruenceResult c2 = skew_canonical_congruence(a);
    CHECK(c1.P == c2.P);
    CHECK(c1.canonical == c2.canonical);
}
