#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selberg {

enum class VerifyLevel { quick, full };

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::full;
    std::uint64_t seed = 20100607;
};

/// Outcome of one acceptance check. `worst` is the largest normalized
/// discrepancy seen and `tolerance` the bound it was held to.
struct CheckResult {
    std::string id;     // "AC1" ... "AC11"
    std::string title;
    bool passed = false;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCheckCount = 11;

/// Runs check `index` (1-based). Numerical exceptions are caught and reported
/// as a failure carrying the error name.
CheckResult run_check(int index, const VerifyOptions& opt = {});

std::vector<CheckResult> run_all_checks(const VerifyOptions& opt = {});

/// One line per check: "PASS AC1 ..." or "FAIL AC1 ...".
std::string format_check(const CheckResult& r);

}  // namespace selberg
