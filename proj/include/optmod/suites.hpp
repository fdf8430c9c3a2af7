#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named verification suites shared by the CLI and the acceptance binary.
namespace optmod::suites {

struct CheckOutcome {
    std::string suite;
    std::string name;
    std::int64_t level = 0;
    std::int64_t dmax = 0;
    bool passed = false;
    std::string witness;  // empty when passed
    std::string detail;
};

/// lemma21, integrality, count-identity, eisenstein-identities, mod-N,
/// mass-formula, lemma44, thm-classification, corollary-rank.
const std::vector<std::string>& suite_names();

/// Maps descriptive aliases onto suite names; throws InvalidInput otherwise.
std::string canonical_suite(const std::string& name);

std::vector<CheckOutcome> run(const std::string& suite, std::int64_t level, std::int64_t dmax);

}  // namespace optmod::suites
