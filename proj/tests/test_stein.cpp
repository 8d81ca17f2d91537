#include <catch_amalgamated.hpp>

#include "sgtk/error.hpp"
#include "sgtk/fixtures.hpp"
#include "sgtk/stein.hpp"

using namespace sgtk;
using namespace sgtk::stein;

namespace {

HandleWord word(std::initializer_list<int> labels)
{
    HandleWord w;
    for (int l : labels)
        w.push_back({static_cast<std::size_t>((l < 0 ? -l : l) - 1), l < 0 ? -1 : 1});
    return w;
}

TwoHandleCurve explicit_curve(std::string name, IntVector traversal, Int r)
{
    return {std::move(name), std::move(traversal), r, std::nullopt, 1};
}

}  // namespace

TEST_CASE("alternation convention")
{
    CHECK(alternation_convention(word({2})) == 0);
    CHECK(alternation_convention(word({1, -2})) == -1);
    CHECK(alternation_convention(word({1, 2, 3})) == 0);
    CHECK(alternation_convention(word({1, -2, 3, -4})) == -2);
    CHECK(alternation_convention(word({-1, -2})) == 0);
}

TEST_CASE("base rotation needs a word or an explicit value")
{
    CHECK_THROWS_AS(base_rotation_planar(std::nullopt, alternation_convention), PreconditionError);
    SteinProblem p{{"X1"}, {{"c", {1}, std::nullopt, std::nullopt, 1}}, 0};
    CHECK_THROWS_AS(c1_cochain(p), PreconditionError);
    p.curves[0].base_rotation = 4;
    CHECK(c1_cochain(p) == IntVector{4});
    // the explicit value wins over the word
    p.curves[0].word = word({1});
    CHECK(c1_cochain(p) == IntVector{4});
}

TEST_CASE("custom rotation convention")
{
    SteinProblem p{{"X1", "X2"}, {{"g", {1, -1}, std::nullopt, word({1, -2}), 1}, {"K", {-1, 1}, std::nullopt, word({-1, 2}), 1}}, 1};
    const RotationConvention all_ones = [](const HandleWord&) { return Int{1}; };
    CHECK(c1_cochain(p, all_ones) == IntVector{1, 1});
    const auto r = rotation_number(p, all_ones);
    REQUIRE(r.rot);
    CHECK(*r.h == IntVector{1, 1});
    CHECK(*r.rot == 2);
}

TEST_CASE("validation")
{
    SteinProblem p{{"X1"}, {}, 0};
    CHECK_THROWS_AS(p.validate(), InputError);
    p.curves.push_back({"K", {1, 0}, 0, std::nullopt, 1});
    CHECK_THROWS_AS(p.validate(), InputError);
    p.curves[0].traversal = {1};
    CHECK_NOTHROW(p.validate());
    p.curves[0].word = word({-1});
    CHECK_THROWS_AS(p.validate(), InputError);
    p.curves[0].word.reset();
    p.curves[0].sign = -1;
    CHECK_THROWS_AS(p.validate(), PreconditionError);
    p.curves[0].sign = 1;
    p.distinguished = 3;
    CHECK_THROWS_AS(p.validate(), InputError);
}

TEST_CASE("twist-knot fixture: boundary map and rotation number")
{
    const auto d = fixtures::load("fig3_twist_m2");
    const auto& p = d.stein_problem("W").problem;
    CHECK(p.one_handles.size() == 4);
    CHECK(p.curves.size() == 5);
    const IntMatrix d2 = boundary_matrix(p);
    CHECK(d2.column(0) == IntVector{0, 1, 0, 0});
    CHECK(d2.column(1) == IntVector{1, -1, 0, 0});
    CHECK(d2.column(4) == IntVector{0, -1, 0, 0});
    CHECK(c1_cochain(p) == IntVector{0, -1, -1, -1, 0});

    const auto r = rotation_number(p);
    CHECK(r.kernel_rank == 1);
    CHECK_FALSE(r.ambiguous);
    CHECK(*r.h == IntVector{1, 0, 0, 0, 1});
    CHECK(*r.rot == 0);
}

TEST_CASE("no class meets the distinguished curve once")
{
    // gamma = 2 X1, K = X1: ker d2 is spanned by (1, -2), coefficient -2 on K
    SteinProblem p{{"X1"}, {explicit_curve("gamma", {2}, 0), explicit_curve("K", {1}, 0)}, 1};
    try {
        rotation_number(p);
        FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("rank 1") != std::string::npos);
        CHECK(msg.find("gcd 2") != std::string::npos);
    }
    // K not null-homologous at all
    SteinProblem q{{"X1", "X2"}, {explicit_curve("gamma", {1, 0}, 0), explicit_curve("K", {0, 1}, 0)}, 1};
    CHECK_THROWS_AS(rotation_number(q), PreconditionError);
}

TEST_CASE("rank-two kernel: well defined or flagged ambiguous")
{
    // gamma1 = gamma2 = X1, K = -X1; classes avoiding K are spanned by S_g1 - S_g2.
    SteinProblem p{{"X1"},
                   {explicit_curve("g1", {1}, 0), explicit_curve("g2", {1}, 0), explicit_curve("K", {-1}, 3)},
                   2};
    auto r = rotation_number(p);
    CHECK(r.kernel_rank == 2);
    REQUIRE(r.rot);
    CHECK(*r.rot == 3);

    p.curves[0].base_rotation = 1;
    r = rotation_number(p);
    CHECK(r.ambiguous);
    CHECK_FALSE(r.rot);
    CHECK_FALSE(r.h);
    CHECK(r.basis_pairings.size() == 2);
}
