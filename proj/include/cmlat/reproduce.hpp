#pragma once

#include <string>
#include <vector>

#include "cmlat/reduction.hpp"

namespace cmlat {

struct CheckResult {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

// Result of one worked example: a list of named exact checks.
struct ReproReport {
    std::string example_id;
    long l = 0;
    std::string matrix_source;
    std::vector<std::string> ideals;
    bool deep = false;
    std::vector<CheckResult> checks;
    long runtime_ms = 0;

    bool pass() const;
};

const std::vector<std::string>& reproduce_ids();  // l23 l31 l47 l15w1 l15w2

// Runs the named example suite.  `deep` adds the long enumerations
// (kissing numbers, rank-48 minimum); throws std::invalid_argument for an
// unknown id.
ReproReport run_reproduce(const std::string& id, bool deep,
                          const EnumOptions& opts = {});

std::string report_json(const ReproReport& rep);

// Structural comparison of two serialized reports, ignoring runtime fields.
bool report_matches(const std::string& json_a, const std::string& json_b);

}  // namespace cmlat
