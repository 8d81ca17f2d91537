#include <catch_amalgamated.hpp>

#include <set>

#include "sgtk/error.hpp"
#include "sgtk/hfbook.hpp"

using namespace sgtk;
using namespace sgtk::hfbook;

TEST_CASE("surgery module layout")
{
    const auto m = hf_plus_surgery(7);
    CHECK(m.spinc_count() == 8);
    CHECK(m.total_towers() == 8);
    CHECK(m.slots()[0].finite_z == 1);
    for (std::size_t i = 1; i < m.slots().size(); ++i)
        CHECK(m.slots()[i].finite_z == 0);
    CHECK_THROWS_AS(hf_plus_surgery(6), PreconditionError);
    CHECK_THROWS_AS(hf_plus_surgery(-3), PreconditionError);
}

TEST_CASE("hat ranks and reduced rank")
{
    for (Int n = 7; n <= 12; ++n) {
        const auto m = hf_plus_surgery(n);
        const auto hat = hf_hat(m);
        REQUIRE(hat.size() == static_cast<std::size_t>(n + 1));
        CHECK(hat[0] == 3);
        for (std::size_t i = 1; i < hat.size(); ++i)
            CHECK(hat[i] == 1);
        CHECK(hf_red_rank(m) == 1);
    }
    const FormalHFModule custom({{1, 2}, {1, 0}, {0, 1}});
    CHECK(hf_hat(custom) == std::vector<Int>{5, 1, 2});
    CHECK(hf_red_rank(custom) == 3);
}

TEST_CASE("formal modules reject bad data")
{
    CHECK_THROWS_AS(FormalHFModule({}), InputError);
    CHECK_THROWS_AS(FormalHFModule({{-1, 0}}), InputError);
    CHECK_THROWS_AS(FormalHFModule({{1, -2}}), InputError);
}

TEST_CASE("pigeonhole excess")
{
    const auto m = hf_plus_surgery(9);
    ContactClassSet classes{11, true, true};
    CHECK(pigeonhole_excess(classes, m) == 1);
    CHECK(forces_nonplanar(classes, m));

    classes.class_count = 10;
    CHECK(pigeonhole_excess(classes, m) == 0);
    CHECK_FALSE(forces_nonplanar(classes, m));

    // without distinctness or the one-per-tower exclusion the count says nothing
    CHECK_THROWS_AS(pigeonhole_excess({11, false, true}, m), PreconditionError);
    CHECK_THROWS_AS(pigeonhole_excess({11, true, false}, m), PreconditionError);

    // excess but nowhere to land
    const FormalHFModule no_red({{1, 0}, {1, 0}});
    CHECK(pigeonhole_excess({3, true, true}, no_red) == 1);
    CHECK_FALSE(forces_nonplanar({3, true, true}, no_red));
}

TEST_CASE("trefoil rotation lists")
{
    CHECK(trefoil_rotation_list(1) == std::vector<Int>{-2, 0, 2});
    CHECK(trefoil_rotation_list(2) == std::vector<Int>{-3, -1, 1, 3});
    for (Int n = 1; n <= 30; ++n) {
        const auto r = trefoil_rotation_list(n);
        CHECK(r.size() == static_cast<std::size_t>(n + 2));
        CHECK(std::set<Int>(r.begin(), r.end()).size() == r.size());
        CHECK(r.front() == -(n + 1));
        CHECK(r.back() == n + 1);
        for (Int x : r)
            CHECK(((x - n - 1) % 2 + 2) % 2 == 0);
    }
    CHECK_THROWS(trefoil_rotation_list(0));
}
