#include <catch_amalgamated.hpp>

#include <limits>
#include <random>

#include "sgtk/zlinalg.hpp"

using namespace sgtk::zlinalg;

namespace {

bool unimodular(const IntMatrix& m)
{
    const Int d = determinant(m);
    return d == 1 || d == -1;
}

bool in_kernel(const IntMatrix& a, const IntVector& v)
{
    return multiply(a, v) == IntVector(a.rows(), 0);
}

}  // namespace

TEST_CASE("checked arithmetic throws instead of wrapping")
{
    constexpr Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(checked::add(big, 1), std::overflow_error);
    CHECK_THROWS_AS(checked::mul(big / 2 + 1, 2), std::overflow_error);
    CHECK_THROWS_AS(checked::neg(std::numeric_limits<Int>::min()), std::overflow_error);
    CHECK(checked::sub(-5, 7) == -12);
}

TEST_CASE("gcd and floor division")
{
    CHECK(gcd(12, -18) == 6);
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(0, -7) == 7);
    CHECK(floor_div(-7, 2) == -4);
    CHECK(floor_div(7, -2) == -4);
    CHECK(floor_div(6, 3) == 2);
}

TEST_CASE("Bareiss determinant")
{
    CHECK(determinant(IntMatrix{{2, 0}, {0, 3}}) == 6);
    CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}) == 0);
    CHECK(determinant(IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}) == 4);
    CHECK(determinant(IntMatrix(0, 0)) == 1);
}

TEST_CASE("Smith normal form of a textbook matrix")
{
    const IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    const auto s = smith_normal_form(a);
    CHECK(s.diagonal() == IntVector{2, 6, 12});
    CHECK(s.rank == 3);
    CHECK(s.U * a * s.V == s.D);
    CHECK(unimodular(s.U));
    CHECK(unimodular(s.V));
}

TEST_CASE("Smith normal form of rectangular and degenerate matrices")
{
    SECTION("zero matrix")
    {
        const auto s = smith_normal_form(IntMatrix(2, 3));
        CHECK(s.rank == 0);
        CHECK(s.D.is_zero());
    }
    SECTION("torsion in a cokernel")
    {
        // Z^2 / <(2, 0), (0, 4), (2, 4)> = Z/2 + Z/4
        const IntMatrix a{{2, 0, 2}, {0, 4, 4}};
        const auto s = smith_normal_form(a);
        CHECK(s.diagonal() == IntVector{2, 4});
        CHECK(s.U * a * s.V == s.D);
    }
    SECTION("coprime diagonal gets merged")
    {
        const IntMatrix a{{2, 0}, {0, 3}};
        const auto s = smith_normal_form(a);
        CHECK(s.diagonal() == IntVector{1, 6});
        CHECK(s.U * a * s.V == s.D);
    }
    SECTION("tall column")
    {
        const IntMatrix a{{6}, {10}, {15}};
        const auto s = smith_normal_form(a);
        CHECK(s.diagonal() == IntVector{1});
        CHECK(s.U * a * s.V == s.D);
    }
}

TEST_CASE("Smith normal form fails loudly when transforms leave int64")
{
    const Int big = 4'000'000'000;
    CHECK_THROWS_AS(smith_normal_form(IntMatrix{{big, 1}, {1, big}}), std::overflow_error);
}

TEST_CASE("Smith invariants on random small matrices")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> entry(-6, 6);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int t = 0; t < 300; ++t) {
        IntMatrix a(dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a(i, j) = entry(rng);
        const auto s = smith_normal_form(a);
        REQUIRE(s.U * a * s.V == s.D);
        REQUIRE(unimodular(s.U));
        REQUIRE(unimodular(s.V));
        const auto d = s.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            REQUIRE(d[i] >= 0);
            if (d[i] == 0)
                REQUIRE(d[i + 1] == 0);
            else
                REQUIRE(d[i + 1] % d[i] == 0);
        }
        REQUIRE(s.rank == rank(a));
    }
}

TEST_CASE("Hermite normal form")
{
    const IntMatrix a{{2, 3, 6}, {4, 6, 12}, {1, 1, 1}};
    const IntMatrix h = hermite_normal_form(a);
    REQUIRE(h.rows() == 2);
    CHECK(h == IntMatrix{{1, 0, -3}, {0, 1, 4}});
    CHECK(hermite_normal_form(IntMatrix(2, 2)).rows() == 0);
}

TEST_CASE("kernel basis")
{
    SECTION("one row")
    {
        const IntMatrix a{{1, 2, 3}};
        const auto k = kernel_basis(a);
        REQUIRE(k.size() == 2);
        for (const auto& v : k)
            CHECK(in_kernel(a, v));
        // saturated: (1, 1, -1) is in the kernel and must be an integer combination
        const IntVector target{1, 1, -1};
        CHECK(solve_integer(IntMatrix::from_columns(k, 3), target).has_value());
    }
    SECTION("full column rank")
    {
        CHECK(kernel_basis(IntMatrix{{1, 0}, {0, 1}, {1, 1}}).empty());
    }
    SECTION("twist-knot boundary map has kernel S_K + S_gamma1")
    {
        // columns gamma1, gamma2, gamma3, K over X1, X2, X3 (m = 1)
        const IntMatrix d2{{0, 1, 0, 0}, {1, -1, 1, -1}, {0, 0, -1, 0}};
        const auto k = kernel_basis(d2);
        REQUIRE(k.size() == 1);
        const IntVector v = k[0][0] < 0 ? IntVector{-k[0][0], -k[0][1], -k[0][2], -k[0][3]} : k[0];
        CHECK(v == IntVector{1, 0, 0, 1});
    }
}

TEST_CASE("integer solving")
{
    CHECK(solve_integer(IntMatrix::identity(3), IntVector{4, -1, 2}) == IntVector{4, -1, 2});
    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{1}).has_value());
    CHECK_FALSE(solve_integer(IntMatrix{{1, 1}, {1, 1}}, IntVector{1, 2}).has_value());
    const auto x = solve_integer(IntMatrix{{2, 3}}, IntVector{1});
    REQUIRE(x.has_value());
    CHECK(2 * (*x)[0] + 3 * (*x)[1] == 1);
    CHECK_THROWS_AS(solve_integer(IntMatrix{{1, 0}}, IntVector{1, 2}), std::invalid_argument);
}

TEST_CASE("matrix plumbing")
{
    const IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}}, 2);
    CHECK(a.transpose() == IntMatrix{{1, 3}, {2, 4}});
    CHECK(a.column(1) == IntVector{2, 4});
    CHECK(IntMatrix::from_columns({{1, 3}, {2, 4}}, 2) == a);
    CHECK(dot(IntVector{1, 2, 3}, IntVector{4, 5, 6}) == 32);
    CHECK_THROWS(a.at(2, 0));
}
