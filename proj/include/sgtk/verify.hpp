// Acceptance criteria behind `sgtk verify-paper`.
#pragma once

#include <string>
#include <vector>

namespace sgtk::verify {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

/// Criteria 1-9. Deterministic; random checks use a fixed seed.
std::vector<CriterionResult> run_acceptance();

std::string format_result(const CriterionResult& r);

}  // namespace sgtk::verify
