// Command dispatch shared by the sgtk executable and the tests.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sgtk/document.hpp"

namespace sgtk::cmd {

struct Report {
    std::string human;        // table text for standard output
    nlohmann::json machine;   // same data, structured
    bool ok = true;           // false maps to exit status 1
};

const std::vector<std::string>& command_names();

/// Throws std::invalid_argument for an unknown command; module errors propagate.
Report run_command(const std::string& command, const doc::InputDocument& document);

}  // namespace sgtk::cmd
