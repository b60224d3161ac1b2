#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace biharm {

enum class Compare {
    absolute, // |got − expected| ≤ tol
    relative, // |got − expected| ≤ tol·|expected|
    at_least, // got ≥ expected
};

struct CheckResult {
    std::string name;
    double expected = 0.0;
    double got = 0.0;
    double tolerance = 0.0;
    Compare compare = Compare::absolute;
    bool pass = false;
    std::string error; // set when the computation itself failed

    std::string expected_text() const;
};

/// Names of the built-in checks in evaluation order.
std::vector<std::string> check_names();

/// Runs every built-in check whose name contains `filter` (all when empty).
/// Evaluation order is fixed, so repeated runs are identical.
std::vector<CheckResult> run_checks(std::string_view filter = {});

} // namespace biharm
