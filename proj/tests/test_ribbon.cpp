#include <catch_amalgamated.hpp>

#include "sgtk/error.hpp"
#include "sgtk/ribbon.hpp"

using namespace sgtk;
using namespace sgtk::ribbon;

namespace {

RibbonSurface punctured_torus(Int crossing = 1)
{
    return RibbonSurface::build(2, {0, 1, 0, 1}, {-1, -1}, IntMatrix{{0, crossing}, {crossing, 0}});
}

CurveClass cls(IntVector v)
{
    return {std::move(v), std::nullopt};
}

}  // namespace

TEST_CASE("disk and simple pages")
{
    const auto d = RibbonSurface::disk();
    CHECK(d.band_count() == 0);
    CHECK(d.euler_characteristic() == 1);
    CHECK(d.boundary_count() == 1);
    CHECK(d.genus() == 0);

    const auto annulus = RibbonSurface::build(1, {0, 0}, {-1}, IntMatrix(1, 1));
    CHECK(annulus.boundary_count() == 2);
    CHECK(annulus.genus() == 0);

    const auto t = punctured_torus();
    CHECK(t.boundary_count() == 1);
    CHECK(t.genus() == 1);
    CHECK(t.interleaved(0, 1));
}

TEST_CASE("planar page with nested and side-by-side bands")
{
    // 1 1 2 2 3 3: three separate bands, four boundary circles
    const auto p = RibbonSurface::build(3, {0, 0, 1, 1, 2, 2}, {0, 0, 0}, IntMatrix(3, 3));
    CHECK(p.boundary_count() == 4);
    CHECK(p.genus() == 0);
    // 1 2 2 1: nested
    const auto n = RibbonSurface::build(2, {0, 1, 1, 0}, {0, 0}, IntMatrix(2, 2));
    CHECK(n.boundary_count() == 3);
    CHECK_FALSE(n.interleaved(0, 1));
}

TEST_CASE("genus two from two interleaved pairs")
{
    const auto f = RibbonSurface::build(4, {0, 1, 0, 1, 2, 3, 2, 3}, {0, 0, 0, 0},
                                        IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    CHECK(f.genus() == 2);
    CHECK(f.boundary_count() == 1);
}

TEST_CASE("malformed pages are rejected")
{
    CHECK_THROWS_AS(RibbonSurface::build(2, {0, 1, 0}, {0, 0}, IntMatrix(2, 2)), InputError);
    CHECK_THROWS_AS(RibbonSurface::build(2, {0, 0, 0, 1}, {0, 0}, IntMatrix(2, 2)), InputError);
    CHECK_THROWS_AS(RibbonSurface::build(1, {0, 0}, {0, 0}, IntMatrix(1, 1)), InputError);
    // interleaved bands need an odd crossing count
    CHECK_THROWS_AS(punctured_torus(2), InputError);
    // asymmetric table
    CHECK_THROWS_AS(RibbonSurface::build(2, {0, 1, 0, 1}, {0, 0}, IntMatrix{{0, 1}, {3, 0}}), InputError);
    // a half-twisted band makes the page non-orientable
    CHECK_THROWS_AS(RibbonSurface::build(1, {0, 0}, {0}, IntMatrix(1, 1), {false}), InputError);
}

TEST_CASE("intersection form")
{
    const auto t = punctured_torus();
    CHECK(intersection_form(t) == IntMatrix{{0, 1}, {-1, 0}});
    CHECK(intersection(t, IntVector{1, 0}, IntVector{0, 1}) == 1);
    CHECK(intersection(t, IntVector{1, 1}, IntVector{1, 1}) == 0);

    const auto p = RibbonSurface::build(3, {0, 0, 1, 1, 2, 2}, {0, 0, 0}, IntMatrix(3, 3));
    CHECK(intersection_form(p).is_zero());
}

TEST_CASE("curve classes and traversal words")
{
    const auto t = punctured_torus();
    const auto c = CurveClass::from_word(2, {{0, 1}, {1, -1}, {0, 1}});
    CHECK(c.coefficients == IntVector{2, -1});
    CHECK_NOTHROW(c.check_on(t));
    CurveClass bad{{1, 1}, TraversalWord{{0, 1}}};
    CHECK_THROWS_AS(bad.check_on(t), InputError);
    CHECK_THROWS_AS(cls({1, 0, 0}).check_on(t), InputError);
    CHECK(is_nonseparating(t, cls({1, 1})));
    CHECK_FALSE(is_nonseparating(t, cls({0, 0})));
}

TEST_CASE("Dehn twists act as transvections")
{
    const auto t = punctured_torus();
    const auto a = cls({1, 0});
    const IntMatrix m = dehn_twist_action(t, a, 1);
    // b -> b + <b, a> a = b - a
    CHECK(zlinalg::multiply(m, IntVector{0, 1}) == IntVector{-1, 1});
    CHECK(zlinalg::multiply(m, IntVector{1, 0}) == IntVector{1, 0});
    const IntMatrix j = intersection_form(t);
    CHECK(m.transpose() * j * m == j);
    CHECK(dehn_twist_action(t, a, -1) * m == IntMatrix::identity(2));
}

TEST_CASE("monodromy applies the first twist first")
{
    const auto t = punctured_torus();
    OpenBook ob{t, {{cls({1, 0}), 1}, {cls({0, 1}), 1}}};
    CHECK_NOTHROW(ob.validate());
    CHECK(ob.all_twists_positive());
    const IntMatrix ta = dehn_twist_action(t, cls({1, 0}), 1);
    const IntMatrix tb = dehn_twist_action(t, cls({0, 1}), 1);
    CHECK(monodromy_action(ob) == tb * ta);
    // trefoil monodromy has order 6 on H_1
    IntMatrix p = IntMatrix::identity(2);
    for (int i = 0; i < 6; ++i)
        p = monodromy_action(ob) * p;
    CHECK(p == IntMatrix::identity(2));
}

TEST_CASE("positive stabilization plumbs a Hopf band")
{
    OpenBook disk{RibbonSurface::disk(), {}};
    const auto s = stabilize(disk, {0, 1, std::nullopt});
    CHECK(s.page.band_count() == 1);
    CHECK(s.page.boundary_count() == 2);
    CHECK(s.page.twists() == IntVector{-1});
    REQUIRE(s.monodromy.size() == 1);
    CHECK(s.monodromy[0].sign == 1);
    CHECK(s.monodromy[0].curve.coefficients == IntVector{1});

    // stabilizing across one foot of an existing band raises the genus
    OpenBook annulus = s;
    const auto s2 = stabilize(annulus, {0, 2, std::nullopt});
    CHECK(s2.page.band_count() == 2);
    CHECK(s2.page.euler_characteristic() == -1);
    CHECK(s2.page.interleaved(0, 1));
    CHECK(s2.page.genus() == 1);
    CHECK(s2.monodromy[0].curve.coefficients == IntVector{1, 0});
    CHECK(s2.monodromy[1].curve.coefficients == IntVector{0, 1});

    CHECK(extend_by_zero(cls({3}), 3).coefficients == IntVector{3, 0, 0});
}
