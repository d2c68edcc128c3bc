#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bispec {

// The bundled desk-check suite: eight numbered criteria, each timed. A
// criterion that fails for a documented mathematical reason (the engineered
// interior-zero weight, where the closed slice form and the ergodic oracle
// genuinely disagree) is marked expected_failure and does not fail the run.
struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    bool expected_failure = false;
    double seconds = 0.0;
    std::vector<std::string> detail;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

// One line per criterion plus indented detail; returns the number of
// unexpected failures (the process exit status of `selftest`).
int print_acceptance(std::ostream& out, std::uint64_t seed);

}  // namespace bispec
