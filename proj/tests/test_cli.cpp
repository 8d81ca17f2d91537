#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string("\"") + SGTK_EXE + "\" " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch(const std::string& name, const std::string& text)
{
    const fs::path dir = fs::temp_directory_path() / "sgtk_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

bool has(const std::string& s, const std::string& part)
{
    return s.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("tb on a bundled fixture")
{
    const auto r = run("tb --fixture fig1_torus_k2");
    CHECK(r.code == 0);
    CHECK(has(r.out, "K"));
    CHECK(has(r.out, "3"));
}

TEST_CASE("--input reads a file from disk")
{
    const auto r = run(std::string("tb --input \"") + SGTK_FIXTURE_DIR + "/fig1_torus_k3.json\" --format machine");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j.at("curves"))
        if (c.at("name") == "K") {
            CHECK(c.at("tb") == 5);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("--output writes machine JSON")
{
    const fs::path out = fs::temp_directory_path() / "sgtk_cli_test" / "rot.json";
    fs::create_directories(out.parent_path());
    fs::remove(out);
    const auto r = run("rot --fixture fig3_twist_m3 --output \"" + out.string() + "\"");
    REQUIRE(r.code == 0);
    std::ifstream in(out);
    REQUIRE(in);
    const auto j = nlohmann::json::parse(in);
    REQUIRE(j.at("problems").size() == 1);
    CHECK(j.at("problems")[0].at("rot") == 0);
    CHECK(j.at("problems")[0].at("h_text") == "S_gamma1 + S_K");
}

TEST_CASE("malformed input exits 2")
{
    const auto bad = scratch("bad.json", "{\"surfaces\": [ {\"name\": }");
    const auto r = run("tb --input \"" + bad.string() + "\"");
    CHECK(r.code == 2);
    CHECK(has(r.out, "line 1"));

    const auto dangling = scratch("dangling.json", R"({"curves": [{"name": "K", "surface": "F", "coefficients": [1]}]})");
    CHECK(run("tb --input \"" + dangling.string() + "\"").code == 2);
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run("frobnicate --fixture fig1_torus_k1").code == 2);
    CHECK(run("tb").code == 2);
    CHECK(run("tb --fixture nope").code == 2);
    CHECK(run("tb --fixture fig1_torus_k1 --format yaml").code == 2);
}

TEST_CASE("computational preconditions exit 1")
{
    // K has neither a word nor a base rotation
    const auto p = scratch("noword.json", R"({"stein_problems": [{"name": "W", "one_handles": ["X1"],
        "curves": [{"name": "g", "traversal": [1], "rotation": 0}, {"name": "K", "traversal": [-1]}],
        "distinguished": "K"}]})");
    const auto r = run("rot --input \"" + p.string() + "\"");
    CHECK(r.code == 1);

    // two planar-page facts for a positive-tb knot
    const auto q = scratch("clash.json", R"({"facts": [{"name": "b", "knots": [{"name": "L", "tb": 1, "rot": 0}],
        "facts": [{"kind": "page-witness", "subject": "L", "genus": 0}, {"kind": "positive-tb", "subject": "L"}]}]})");
    const auto s = run("sg-bounds --input \"" + q.string() + "\"");
    CHECK(s.code == 1);
    CHECK(has(s.out, "page-witness"));
}

TEST_CASE("listing and self check")
{
    const auto l = run("--list-fixtures");
    CHECK(l.code == 0);
    CHECK(has(l.out, "thm15_facts"));
    const auto v = run("verify-paper");
    CHECK(v.code == 0);
    CHECK(has(v.out, "9/9 criteria passed"));
}
