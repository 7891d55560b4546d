#ifndef APPROXSYS_VERIFY_HPP
#define APPROXSYS_VERIFY_HPP

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace approxsys {

enum class VerifyScope { all, prefix, bounds, shifts, positivity, numeric };

/// Throws ErrorKind::usage for unknown scopes.
VerifyScope parse_scope(std::string_view text);
std::string_view to_string(VerifyScope scope) noexcept;

struct CheckResult {
    std::string scope;
    std::string name;
    bool passed = false;
    /// Measured values, or the counterexample when the check fails.
    nlohmann::json detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    nlohmann::json to_json() const;
};

/// Runs the invariant suites in a fixed order.
VerifyReport run_verify(VerifyScope scope);

}  // namespace approxsys

#endif  // APPROXSYS_VERIFY_HPP
