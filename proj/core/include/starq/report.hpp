#pragma once

#include <string>
#include <vector>

namespace starq {

/// Outcome of a property check.  Deterministic: the first witness found under
/// the fixed iteration order is the one recorded.
struct Report {
    bool pass = true;
    std::string summary;
    std::vector<std::string> witnesses;

    void fail(std::string witness) {
        pass = false;
        witnesses.push_back(std::move(witness));
    }
    explicit operator bool() const { return pass; }
};

} // namespace starq
