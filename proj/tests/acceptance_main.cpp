#include <cstdio>

#include "qeve/verify.hpp"

int main() {
    const std::vector<qeve::CriterionResult> results = qeve::run_acceptance();
    bool all = true;
    for (const qeve::CriterionResult& r : results) {
        std::printf("%-4s %2d  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.label.c_str());
        std::printf("         %s\n", r.detail.c_str());
        if (!r.finding.empty()) std::printf("         finding: %s\n", r.finding.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "all criteria pass" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
