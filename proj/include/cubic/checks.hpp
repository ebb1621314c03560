#pragma once

#include <string>
#include <vector>

namespace cubic {

struct CheckItem {
    std::string name;
    bool pass = false;
    std::string detail;
    // false for comparisons against printed digits, which do not gate `check`
    bool invariant = true;
};

struct CheckResult {
    int id = 0;
    std::string title;
    std::vector<CheckItem> items;
    double seconds = 0;
    double budget = 0;  // seconds

    bool pass() const;
    bool invariants_pass() const;
};

struct CheckOptions {
    bool fast = false;  // reduced sizes
    unsigned jobs = 0;  // 0: hardware concurrency
};

CheckResult check_constants(const CheckOptions& opt);
CheckResult check_gauss(const CheckOptions& opt);
CheckResult check_reciprocity(const CheckOptions& opt);
CheckResult check_afe(const CheckOptions& opt);
CheckResult check_family(const CheckOptions& opt);
CheckResult check_analytic(const CheckOptions& opt);
CheckResult check_mollifier(const CheckOptions& opt);
CheckResult check_grh(const CheckOptions& opt);
CheckResult check_moments(const CheckOptions& opt);

// All nine in order.
std::vector<CheckResult> run_checks(const CheckOptions& opt);

}  // namespace cubic
