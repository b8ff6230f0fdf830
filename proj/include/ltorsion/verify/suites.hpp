#pragma once

// Property suites behind `ltorsion verify`. Each check compares library
// output with an oracle or an invariant and records the worst measured
// deviation next to the tolerance it was held to.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ltorsion::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double measured = 0;   // worst error, or the number of failing cases
    double tolerance = 0;
    std::uint64_t cases = 0;
    std::string detail;    // first failing case, or a note
};

// algebra, field, coeffs, classgroup, mellin, pipeline, io.
const std::vector<std::string>& suite_names();

// One suite by name, or every suite for "all". InvalidArgument for an
// unknown name. Randomised inputs are drawn from `seed`.
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed);

// One JSON object per line, keys in a fixed order.
std::string to_jsonl(const CheckResult& result);

}  // namespace ltorsion::verify
