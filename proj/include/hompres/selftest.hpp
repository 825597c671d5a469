#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hompres {

struct SuiteTally {
    std::string name;
    long long checked = 0;
    long long failures = 0;
    std::string first_failure;  // label of the first failing case, empty when clean
};

struct SelftestReport {
    std::string level;  // "quick" or "full"
    uint64_t seed = 0;
    int max_bits = 16;  // exhaustive-sweep budget
    std::vector<SuiteTally> suites;

    bool passed() const;
};

// Cross-module invariant sweeps. "quick" keeps exhaustive sweeps within a
// 16-bit budget, "full" raises it to 22 and enlarges the random corpora.
// Deterministic for a fixed (level, seed).
SelftestReport run_selftest(const std::string& level, uint64_t seed);

}  // namespace hompres
