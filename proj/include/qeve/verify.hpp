#pragma once

#include <string>
#include <vector>

namespace qeve {

struct CriterionResult {
    int id = 0;
    std::string label;
    bool pass = false;
    std::string finding;  // non-empty when a target is not reproduced as stated
    std::string detail;
};

// Evaluates the built-in reproduction targets.  Each entry is
// self-contained and cheap enough to run on every build.
std::vector<CriterionResult> run_acceptance();

}  // namespace qeve
