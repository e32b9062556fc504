#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace degen {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation = "<=";  // pass iff measured relation threshold
    bool pass = false;
    bool informational = false;  // reported but never gates the exit code
    std::string note;
};

enum class VerifySuite { all, analytic, solver };

// Runs the verification suite. Checks are returned ordered by name; the
// solver scenarios may execute in parallel (capped by DEGEN_WAVES_THREADS).
std::vector<CheckResult> run_verification(VerifySuite suite);

// One line per check: PASS/FAIL/INFO, name, measured, threshold, note.
void print_report(const std::vector<CheckResult>& results, std::ostream& os);

// True iff every non-informational check passed.
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace degen
