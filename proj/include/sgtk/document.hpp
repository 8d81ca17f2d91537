/**
 * Structured input documents.
 *
 * A document is a JSON object with up to seven sections, each a list of
 * named records: surfaces, curves, open_books, stein_problems, hf_modules,
 * matrices and facts. Unknown keys are rejected and every cross-reference is
 * resolved at parse time. Bands and one-handles are labelled from 1 in the
 * file. See docs/input-format.md for the schema.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgtk/error.hpp"
#include "sgtk/hfbook.hpp"
#include "sgtk/ribbon.hpp"
#include "sgtk/sgengine.hpp"
#include "sgtk/stein.hpp"

namespace sgtk::doc {

using zlinalg::Int;

/// Syntax errors, dangling references, and invariant violations found while parsing.
class ParseError : public InputError {
public:
    using InputError::InputError;
};

struct NamedSurface {
    std::string name;
    ribbon::RibbonSurface surface;
    friend bool operator==(const NamedSurface&, const NamedSurface&) = default;
};

struct NamedCurve {
    std::string name;
    std::string surface;
    ribbon::CurveClass curve;
    friend bool operator==(const NamedCurve&, const NamedCurve&) = default;
};

struct NamedTwist {
    std::string curve;
    int sign = 1;
    friend bool operator==(const NamedTwist&, const NamedTwist&) = default;
};

struct NamedOpenBook {
    std::string name;
    std::string page;
    std::vector<NamedTwist> monodromy;
    friend bool operator==(const NamedOpenBook&, const NamedOpenBook&) = default;
};

struct NamedSteinProblem {
    std::string name;
    stein::SteinProblem problem;
    std::optional<std::string> open_book;
    friend bool operator==(const NamedSteinProblem&, const NamedSteinProblem&) = default;
};

struct NamedHFModule {
    std::string name;
    std::optional<Int> surgery_n;  // set when built by hf_plus_surgery
    hfbook::FormalHFModule module;
    std::optional<hfbook::ContactClassSet> classes;
    friend bool operator==(const NamedHFModule&, const NamedHFModule&) = default;
};

struct NamedMatrix {
    std::string name;
    zlinalg::IntMatrix matrix;
    friend bool operator==(const NamedMatrix&, const NamedMatrix&) = default;
};

/// Document-level references a fact was resolved against.
struct FactOrigin {
    std::optional<std::string> surface;    // page-witness: genus and framing checked on this page
    std::optional<std::string> curve;
    std::optional<std::string> hf_module;  // nonplanar-surgery: verdict checked with this module
    friend bool operator==(const FactOrigin&, const FactOrigin&) = default;
};

struct NamedFactBase {
    std::string name;
    engine::SGFactBase base;
    std::vector<FactOrigin> origins;  // parallel to base.facts()
    friend bool operator==(const NamedFactBase&, const NamedFactBase&) = default;
};

struct InputDocument {
    std::vector<NamedSurface> surfaces;
    std::vector<NamedCurve> curves;
    std::vector<NamedOpenBook> open_books;
    std::vector<NamedSteinProblem> stein_problems;
    std::vector<NamedHFModule> hf_modules;
    std::vector<NamedMatrix> matrices;
    std::vector<NamedFactBase> facts;

    const NamedSurface& surface(const std::string& name) const;
    const NamedCurve& curve(const std::string& name) const;
    const NamedOpenBook& open_book(const std::string& name) const;
    const NamedSteinProblem& stein_problem(const std::string& name) const;
    const NamedHFModule& hf_module(const std::string& name) const;
    const NamedFactBase& fact_base(const std::string& name) const;

    /// Assemble the open book value (page plus resolved twist curves).
    ribbon::OpenBook build_open_book(const std::string& name) const;

    friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

InputDocument parse_input(const std::string& text);
InputDocument parse_input_file(const std::filesystem::path& path);

nlohmann::json to_json(const InputDocument& doc);
std::string serialize(const InputDocument& doc);

}  // namespace sgtk::doc
