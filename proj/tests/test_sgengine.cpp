#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "sgtk/error.hpp"
#include "sgtk/fixtures.hpp"
#include "sgtk/sgengine.hpp"

using namespace sgtk;
using namespace sgtk::engine;

namespace {

LegendrianDesc knot(std::string name, Int tb, Int rot)
{
    return {std::move(name), "torus(2,3)", tb, rot, {}};
}

Bounds bounds_of(const Derivation& d, const std::string& k)
{
    const auto& iv = d.intervals.at(k);
    return {iv.lo, iv.hi};
}

// L (1, 0) with a genus-1 page, plus its two stabilizations.
SGFactBase small_base()
{
    SGFactBase b;
    b.add_knot(knot("L", 1, 0));
    const auto sp = stabilize_desc(b.knot("L"), 1);
    const auto sm = stabilize_desc(b.knot("L"), -1);
    b.add_knot(sp.knot);
    b.add_knot(sm.knot);
    b.add_fact(SGFact::page_witness("L", 1));
    b.add_fact(SGFact::positive_tb("L"));
    b.add_fact(sp.fact);
    b.add_fact(sm.fact);
    return b;
}

}  // namespace

TEST_CASE("stabilization arithmetic")
{
    const auto s = stabilize_desc(knot("L", 1, 0), 1);
    CHECK(s.knot.name == "S+(L)");
    CHECK(s.knot.tb == 0);
    CHECK(s.knot.rot == 1);
    CHECK(s.fact.kind == FactKind::StabilizationOf);
    CHECK(s.fact.other == "L");

    LegendrianDesc cur = knot("L", 1, 0);
    for (int i = 0; i < 3; ++i)
        cur = stabilize_desc(cur, 1).knot;
    for (int i = 0; i < 2; ++i)
        cur = stabilize_desc(cur, -1).knot;
    CHECK(cur.tb == 1 - 5);
    CHECK(cur.rot == 3 - 2);
}

TEST_CASE("mountain range checks")
{
    CHECK(trefoil_mountain_check(1, 0));
    CHECK(trefoil_mountain_check(-2, -1));
    CHECK_FALSE(trefoil_mountain_check(2, 0));
    CHECK_FALSE(trefoil_mountain_check(1, 2));
    CHECK(trefoil_mountain_check(0, 1));
    CHECK_FALSE(trefoil_mountain_check(0, 0));
    for (Int n = 1; n <= 8; ++n)
        for (Int i = 1; i <= n + 2; ++i)
            CHECK(trefoil_mountain_check(-n, 2 * i - n - 3));

    CHECK(torus_mountain_check(2, 3, 0));
    CHECK(torus_mountain_check(2, 2, 1));
    CHECK_FALSE(torus_mountain_check(2, 2, 0));
    CHECK_FALSE(torus_mountain_check(2, 4, 0));
}

TEST_CASE("R1 through R3 and R2 in both directions")
{
    const auto d = derive_bounds(small_base());
    CHECK(bounds_of(d, "L") == Bounds{1, 1});
    // hi flows down the stabilization, nothing forces lo up
    CHECK(bounds_of(d, "S+(L)") == Bounds{0, 1});
    CHECK(bounds_of(d, "S-(L)") == Bounds{0, 1});
    CHECK(d.intervals.at("L").exact());
}

TEST_CASE("R5 pins the single remaining mirror class")
{
    auto b = small_base();
    b.add_fact(SGFact::orientation_mirror("S+(L)", "S-(L)"));
    b.add_fact(SGFact::nonplanar_surgery({"S+(L)", "S-(L)"}));
    const auto d = derive_bounds(b);
    CHECK(bounds_of(d, "S+(L)") == Bounds{1, 1});
    CHECK(bounds_of(d, "S-(L)") == Bounds{1, 1});
    const auto& trace = d.intervals.at("S+(L)").trace;
    CHECK(std::any_of(trace.begin(), trace.end(), [](const TraceStep& s) { return s.rule == Rule::R5; }));
}

TEST_CASE("R5 stays silent while two classes remain")
{
    auto b = small_base();
    b.add_fact(SGFact::nonplanar_surgery({"S+(L)", "S-(L)"}));
    const auto d = derive_bounds(b);
    CHECK(bounds_of(d, "S+(L)").lo == 0);
    CHECK(bounds_of(d, "S-(L)").lo == 0);
}

TEST_CASE("R4 and R6")
{
    SGFactBase b;
    b.add_knot(knot("A", -1, 0));
    b.add_knot(knot("B", -1, 0));
    b.add_fact(SGFact::surgery_bound("A", 2));
    b.add_fact(SGFact::orientation_mirror("A", "B"));
    b.add_fact(SGFact::page_witness("B", 3));
    const auto d = derive_bounds(b);
    CHECK(bounds_of(d, "A") == Bounds{2, 3});
    CHECK(bounds_of(d, "B") == Bounds{2, 3});
}

TEST_CASE("contradictions are reported, not clamped")
{
    SGFactBase b;
    b.add_knot(knot("L", 1, 0));
    b.add_fact(SGFact::page_witness("L", 0, "planar page"));
    b.add_fact(SGFact::positive_tb("L"));
    try {
        derive_bounds(b);
        FAIL("expected InconsistentFacts");
    } catch (const InconsistentFacts& e) {
        auto c = e.clashing_facts();
        std::sort(c.begin(), c.end());
        CHECK(c == std::vector<std::size_t>{0, 1});
        CHECK(std::string(e.what()).find("page-witness") != std::string::npos);
        CHECK(std::string(e.what()).find("positive-tb") != std::string::npos);
    }
}

TEST_CASE("R5 with every member planar is inconsistent")
{
    SGFactBase b;
    b.add_knot(knot("A", -7, 0));
    b.add_fact(SGFact::page_witness("A", 0));
    b.add_fact(SGFact::nonplanar_surgery({"A"}));
    CHECK_THROWS_AS(derive_bounds(b), InconsistentFacts);
}

TEST_CASE("fact validation")
{
    SGFactBase b;
    b.add_knot(knot("L", 1, 0));
    CHECK_THROWS_AS(b.add_knot(knot("L", 0, 1)), InputError);
    b.add_knot(knot("M", 0, 1));
    b.add_fact(SGFact::stabilization_of("M", "L", 1));
    b.add_fact(SGFact::stabilization_of("L", "M", 1));
    CHECK_THROWS_AS(b.validate(), InputError);  // cycle

    SGFactBase c;
    c.add_knot(knot("L", 1, 0));
    c.add_knot(knot("M", 0, 0));
    c.add_fact(SGFact::stabilization_of("M", "L", 1));  // rot should be 1
    CHECK_THROWS_AS(c.validate(), InconsistentFacts);

    SGFactBase d;
    d.add_knot(knot("L", 2, 0));
    d.add_fact(SGFact::classification("L", KnotFamily::Torus, 1));
    CHECK_THROWS_AS(d.validate(), InconsistentFacts);

    SGFactBase e;
    e.add_knot(knot("L", 1, 0));
    e.add_fact(SGFact::positive_tb("ghost"));
    CHECK_THROWS_AS(e.validate(), InputError);
}

TEST_CASE("replay re-checks every step")
{
    const auto b = small_base();
    const auto d = derive_bounds(b);
    const auto r = replay(b, d.log);
    for (const auto& [k, iv] : d.intervals) {
        CHECK(r.at(k) == Bounds{iv.lo, iv.hi});
        CHECK(fold_trace(iv.trace) == Bounds{iv.lo, iv.hi});
    }

    auto forged = d.log;
    REQUIRE_FALSE(forged.empty());
    forged.front().value = 0;
    forged.front().side = BoundSide::Lower;
    forged.front().value = 5;
    CHECK_THROWS_AS(replay(b, forged), std::logic_error);
}

TEST_CASE("trace lines cite facts")
{
    const auto b = small_base();
    const auto d = derive_bounds(b);
    const auto& iv = d.intervals.at("S+(L)");
    REQUIRE_FALSE(iv.trace.empty());
    const std::string line = format_step(b, iv.trace.back());
    CHECK(line.find("R2") != std::string::npos);
    CHECK(line.find("stabilization-of") != std::string::npos);
    CHECK(format_interval(iv) == "[0, 1]");
    CHECK(format_interval(SGInterval{}) == "[0, inf]");
}

TEST_CASE("fact fixtures are order independent")
{
    const auto doc = fixtures::load("thm15_facts");
    const auto& base = doc.fact_base("thm15").base;
    const auto full = derive_bounds(base);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        auto facts = base.facts();
        auto knots = base.knots();
        std::shuffle(facts.begin(), facts.end(), rng);
        std::shuffle(knots.begin(), knots.end(), rng);
        SGFactBase p;
        for (auto& k : knots)
            p.add_knot(k);
        for (auto& f : facts)
            p.add_fact(f);
        const auto d = derive_bounds(p);
        for (const auto& [k, iv] : full.intervals)
            REQUIRE(bounds_of(d, k) == Bounds{iv.lo, iv.hi});
    }
}

TEST_CASE("fact fixtures reach the expected intervals")
{
    const auto d13 = derive_bounds(fixtures::load("thm13_facts").fact_base("thm13").base);
    for (const char* k : {"T_m(2,3)", "T_m(2,5)", "T_m(2,7)"})
        CHECK(bounds_of(d13, k) == Bounds{1, 1});

    const auto d14 = derive_bounds(fixtures::load("thm14_facts").fact_base("thm14").base);
    CHECK(bounds_of(d14, "K_2") == Bounds{0, 0});
    CHECK(bounds_of(d14, "S+^3S-^2(L_2)") == Bounds{0, 0});
    CHECK(bounds_of(d14, "S+^1S-^6(L_3)") == Bounds{0, 0});
    // tb = 1 representatives keep only the lower bound
    CHECK(bounds_of(d14, "L^(3,5)").lo == 1);
    CHECK_FALSE(bounds_of(d14, "L^(3,5)").hi);

    const auto d15 = derive_bounds(fixtures::load("thm15_facts").fact_base("thm15").base);
    for (int n = 1; n <= 13; ++n) {
        CHECK(bounds_of(d15, "S+^" + std::to_string(n) + "(L)") == Bounds{1, 1});
        CHECK(bounds_of(d15, "S-^" + std::to_string(n) + "(L)") == Bounds{1, 1});
    }
    CHECK(bounds_of(d15, "S+^4S-^3(L)") == Bounds{0, 0});
}
