#include <catch_amalgamated.hpp>

#include <fstream>

#include "sgtk/document.hpp"
#include "sgtk/fixtures.hpp"

using namespace sgtk;
using namespace sgtk::doc;

namespace {

std::string error_of(const std::string& text)
{
    try {
        parse_input(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& part)
{
    return msg.find(part) != std::string::npos;
}

const char* kTorus = R"({
  "surfaces": [{"name": "F", "bands": 2, "feet": [1, 2, 1, 2], "twists": [-1, -1], "crossings": [[1, 2, 3]]}],
  "curves": [{"name": "K", "surface": "F", "traversal": [1, 2]}]
})";

}  // namespace

TEST_CASE("empty documents")
{
    for (const char* text : {"{}", "null"}) {
        const auto d = parse_input(text);
        CHECK(d.surfaces.empty());
        CHECK(d.curves.empty());
        CHECK(d.open_books.empty());
        CHECK(d.stein_problems.empty());
        CHECK(d.hf_modules.empty());
        CHECK(d.matrices.empty());
        CHECK(d.facts.empty());
    }
}

TEST_CASE("bundled twist-knot fixture")
{
    const auto d = fixtures::load("fig3_twist_m2");
    REQUIRE(d.stein_problems.size() == 1);
    CHECK(d.stein_problems[0].problem.one_handles.size() == 4);
    CHECK(d.stein_problems[0].problem.curves.size() == 5);
    CHECK(d.stein_problems[0].open_book == "book");
    const auto ob = d.build_open_book("book");
    CHECK(ob.monodromy.size() == 4);
    CHECK(ob.all_twists_positive());
}

TEST_CASE("every bundled fixture parses and round-trips")
{
    const auto names = fixtures::names();
    CHECK(names.size() == 17);
    for (const auto& n : names) {
        INFO(n);
        const auto d = fixtures::load(n);
        const std::string once = serialize(d);
        const auto again = parse_input(once);
        CHECK(again == d);
        CHECK(serialize(again) == once);
    }
    CHECK_THROWS_AS(fixtures::load("fig9"), ParseError);
}

TEST_CASE("fixture files on disk match the embedded copies")
{
    for (const auto& n : fixtures::names()) {
        std::ifstream in(std::string(SGTK_FIXTURE_DIR) + "/" + n + ".json");
        REQUIRE(in);
        const std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(disk == fixtures::text(n));
    }
}

TEST_CASE("syntax errors carry line and column")
{
    const std::string msg = error_of("{\n  \"surfaces\": [\n    {\"name\": }\n  ]\n}");
    CHECK(mentions(msg, "line 3"));
    CHECK(mentions(msg, "column"));
}

TEST_CASE("dangling references")
{
    const std::string msg = error_of(R"({"curves": [{"name": "K", "surface": "nowhere", "coefficients": [1]}]})");
    CHECK(mentions(msg, "curves[0].surface"));
    CHECK(mentions(msg, "dangling reference"));
    CHECK(mentions(msg, "nowhere"));

    CHECK(mentions(error_of(R"({"facts": [{"name": "b", "knots": [], "facts": [{"kind": "positive-tb", "subject": "L"}]}]})"),
                   "dangling reference to knot 'L'"));
}

TEST_CASE("unknown keys and wrong types")
{
    CHECK(mentions(error_of(R"({"surface": []})"), "unknown key 'surface'"));
    CHECK(mentions(error_of(R"({"surfaces": [{"name": "F", "bands": 1, "feet": [1, 1], "colour": 2}]})"),
                   "unknown key 'colour'"));
    CHECK(mentions(error_of(R"({"surfaces": [{"name": "F", "bands": 1.5, "feet": [1, 1]}]})"),
                   "surfaces[0].bands: expected an integer"));
    CHECK(mentions(error_of(R"({"surfaces": [{"name": "F", "bands": 1, "feet": [1, 2]}]})"),
                   "surfaces[0].feet[1]"));
    CHECK(mentions(error_of(R"({"surfaces": [{"name": "F", "bands": 1, "feet": [1, 1]}, {"name": "F", "bands": 0, "feet": []}]})"),
                   "duplicate name"));
}

TEST_CASE("invariant violations name the invariant")
{
    // parity of crossings
    CHECK(mentions(error_of(R"({"surfaces": [{"name": "F", "bands": 2, "feet": [1, 2, 1, 2], "crossings": [[1, 2, 2]]}]})"),
                   "odd"));

    // page framing must equal tb
    std::string bad = std::string(kTorus);
    bad.pop_back();
    bad += R"(, "facts": [{"name": "b", "knots": [{"name": "L", "tb": 3, "rot": 0}],
                "facts": [{"kind": "page-witness", "subject": "L", "surface": "F", "curve": "K"}]}]})";
    const std::string msg = error_of(bad);
    CHECK(mentions(msg, "framing-agreement"));
    CHECK(mentions(msg, "facts[0].facts[0]"));
}

TEST_CASE("page-witness genus comes from the page")
{
    std::string text = std::string(kTorus);
    text.pop_back();
    text += R"(, "facts": [{"name": "b", "knots": [{"name": "L", "tb": 1, "rot": 0}],
                 "facts": [{"kind": "page-witness", "subject": "L", "surface": "F", "curve": "K"}]}]})";
    const auto d = parse_input(text);
    const auto& f = d.fact_base("b").base.facts().at(0);
    CHECK(f.value == 1);
    CHECK(d.fact_base("b").origins.at(0).surface == "F");
}

TEST_CASE("nonplanar-surgery groups are checked against the HF module")
{
    const auto base = [](const std::string& group, int count) {
        return R"({"hf_modules": [{"name": "h", "surgery_n": 7, "contact_classes": {"count": )" +
               std::to_string(count) + R"(, "distinct": true, "exclusion": true}}],
          "facts": [{"name": "b", "knots": [{"name": "A", "tb": -7, "rot": 0}, {"name": "B", "tb": -7, "rot": 2}],
          "facts": [{"kind": "nonplanar-surgery", "group": )" +
               group + R"(, "hf_module": "h"}]}]})";
    };
    CHECK(mentions(error_of(base(R"(["A", "B"])", 9)), "group has 2 knots"));
    CHECK(mentions(error_of(base(R"(["A", "B"])", 2)), "does not force"));
}

TEST_CASE("stein problems must match their open book")
{
    const auto d = fixtures::load("fig3_twist_m1");
    auto j = to_json(d);
    j["stein_problems"][0]["curves"][1]["word"] = {1, -3};
    j["stein_problems"][0]["curves"][1].erase("traversal");
    CHECK(mentions(error_of(j.dump()), "do not match the monodromy"));

    auto k = to_json(d);
    k["stein_problems"][0]["curves"][0].erase("word");
    CHECK_NOTHROW(parse_input(k.dump()));
}

TEST_CASE("matrices section")
{
    const auto d = parse_input(R"({"matrices": [{"name": "A", "rows": [[2, 4], [6, 8]]}, {"name": "Z", "rows": [], "cols": 3}]})");
    REQUIRE(d.matrices.size() == 2);
    CHECK(d.matrices[0].matrix == zlinalg::IntMatrix{{2, 4}, {6, 8}});
    CHECK(d.matrices[1].matrix.cols() == 3);
    CHECK(mentions(error_of(R"({"matrices": [{"name": "A", "rows": [[1, 2], [3]]}]})"), "rows[1]"));
    CHECK(parse_input(serialize(d)) == d);
}
