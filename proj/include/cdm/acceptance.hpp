#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace cdm::acceptance {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string details;
};

enum class Level { quick, full };

// Runs the acceptance criteria, printing one PASS/FAIL line per criterion to
// `out`.  `cli_path` (optional) points at the command-line binary for the
// rerun-determinism check; empty skips that sub-check.
// Returns all results; overall pass = every result passes.
std::vector<CheckResult> run_all(Level level, const std::string& cli_path,
                                 std::FILE* out);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cdm::acceptance
