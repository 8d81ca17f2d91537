// Fixture documents compiled into the library (see fixtures/).
#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sgtk/document.hpp"

namespace sgtk::fixtures {

struct Fixture {
    std::string_view name;
    std::string_view text;
};

std::span<const Fixture> all();
std::vector<std::string> names();

/// Throws doc::ParseError for an unknown name.
std::string_view text(std::string_view name);
doc::InputDocument load(std::string_view name);

}  // namespace sgtk::fixtures
