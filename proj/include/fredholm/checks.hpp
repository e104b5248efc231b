#pragma once

#include <string>
#include <vector>

namespace fredholm {

/// Outcome of one identity check: a real residual plus the verdict at tolerance.
struct Check {
    std::string name;
    double residual = 0.0;
    bool passed = true;
};

using CheckList = std::vector<Check>;

/// Integer identity: residual is |lhs - rhs|, passes only on exact equality.
inline Check exact_check(std::string name, long long lhs, long long rhs) {
    const long long diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    return {std::move(name), static_cast<double>(diff), diff == 0};
}

/// Real residual compared against an absolute bound.
inline Check bounded_check(std::string name, double residual, double bound) {
    return {std::move(name), residual, residual <= bound};
}

inline bool all_passed(const CheckList& checks) {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

}  // namespace fredholm
