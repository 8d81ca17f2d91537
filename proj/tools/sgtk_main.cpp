// sgtk: command-line front end.
//
//   sgtk <command> [--input FILE | --fixture NAME] [--format human|machine] [--output FILE]
//
// Exit status: 0 success, 1 computation or precondition failure, 2 parse failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sgtk/commands.hpp"
#include "sgtk/error.hpp"
#include "sgtk/fixtures.hpp"
#include "sgtk/sgengine.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kParse = 2;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Support-genus toolkit: page framings, Stein rotation numbers, HF bookkeeping, sg bounds"};
    app.set_help_all_flag("--help-all");

    std::string command;
    std::string input;
    std::string fixture;
    std::string format = "human";
    std::string output;
    bool list = false;

    app.add_option("command", command, "tb | rot | snf | hf | sg-bounds | verify-paper")
        ->check(CLI::IsMember(sgtk::cmd::command_names()));
    auto* in = app.add_option("--input", input, "input document (JSON)")->check(CLI::ExistingFile);
    app.add_option("--fixture", fixture, "use a bundled fixture instead of --input")->excludes(in);
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--output", output, "also write machine-readable results to this file");
    app.add_flag("--list-fixtures", list, "print bundled fixture names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }

    if (list) {
        for (const auto& n : sgtk::fixtures::names())
            std::cout << n << '\n';
        return kOk;
    }
    if (command.empty()) {
        std::cerr << "sgtk: a command is required\n" << app.help();
        return kParse;
    }

    sgtk::doc::InputDocument doc;
    try {
        if (!fixture.empty())
            doc = sgtk::fixtures::load(fixture);
        else if (!input.empty())
            doc = sgtk::doc::parse_input_file(input);
        else if (command != "verify-paper") {
            std::cerr << "sgtk: " << command << " needs --input or --fixture\n";
            return kParse;
        }
    } catch (const sgtk::InputError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    }

    sgtk::cmd::Report rep;
    try {
        rep = sgtk::cmd::run_command(command, doc);
    } catch (const sgtk::engine::InconsistentFacts& e) {
        std::cerr << e.what() << '\n';
        return kFailure;
    } catch (const sgtk::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return kFailure;
    } catch (const sgtk::InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }

    if (format == "machine")
        std::cout << rep.machine.dump(2) << '\n';
    else
        std::cout << rep.human;

    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "sgtk: cannot write " << output << '\n';
            return kFailure;
        }
        out << rep.machine.dump(2) << '\n';
    }
    return rep.ok ? kOk : kFailure;
}
