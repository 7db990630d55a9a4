#pragma once

#include <string>
#include <vector>

namespace mapstab {

struct Failure {
    std::string check;   // which identity, e.g. "chain", "d^2", "associativity"
    std::string where;   // generator or basis indices
    std::string detail;  // both sides / residual
};

/// Outcome of a verification pass. Verifiers never throw on a failed
/// identity; they record it here.
struct VerificationReport {
    std::vector<Failure> failures;

    [[nodiscard]] bool passed() const { return failures.empty(); }
    [[nodiscard]] const Failure* first() const { return failures.empty() ? nullptr : &failures.front(); }
    [[nodiscard]] bool has_check(const std::string& check) const
    {
        for (const auto& f : failures) {
            if (f.check == check) return true;
        }
        return false;
    }
    void fail(std::string check, std::string where, std::string detail)
    {
        failures.push_back({std::move(check), std::move(where), std::move(detail)});
    }
    void merge(const VerificationReport& other)
    {
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
};

}  // namespace mapstab
