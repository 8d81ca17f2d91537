#include "sgtk/fixtures.hpp"

#include <algorithm>

#include "fixture_data.inc"

namespace sgtk::fixtures {

std::span<const Fixture> all()
{
    return {kFixtures, std::size(kFixtures)};
}

std::vector<std::string> names()
{
    std::vector<std::string> out;
    for (const auto& f : all())
        out.emplace_back(f.name);
    return out;
}

std::string_view text(std::string_view name)
{
    for (const auto& f : all())
        if (f.name == name)
            return f.text;
    std::string known;
    for (const auto& n : names())
        known += (known.empty() ? "" : ", ") + n;
    throw doc::ParseError("no bundled fixture named '" + std::string(name) + "' (known: " + known + ")");
}

doc::InputDocument load(std::string_view name)
{
    try {
        return doc::parse_input(std::string(text(name)));
    } catch (const doc::ParseError& e) {
        throw doc::ParseError("fixture " + std::string(name) + ": " + e.what());
    }
}

}  // namespace sgtk::fixtures
