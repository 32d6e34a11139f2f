#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tml {

struct CheckRecord {
    std::string name;     // stable id, also the sort key
    std::string anchor;   // which mathematical fact the check pins down
    std::string expected;
    std::string observed;
    bool pass = false;
};

struct VerificationSummary {
    std::vector<CheckRecord> records; // sorted by name
    bool overall = false;             // conjunction of all records
    std::uint64_t seed = 0;
    // wall time per criterion group, not serialized (it would spoil
    // byte-level report determinism)
    std::vector<std::pair<std::string, double>> timings_ms;
};

struct VerifyConfig {
    std::uint64_t seed = 0;
    int grid_scale = 1;       // multiplies every default grid below
    int maslov_samples = 256; // criterion grids
    int case1_samples = 256;
    double ode_step = 1.0 / 1024;
    int case2_ns = 1024;
    int case2_nt = 256;
    double case2_eps = 0.05;
    int linking_grid = 64;
    double linking_eps = 0.1;
    bool inject_failure = false; // harness self-test: corrupt one expectation

    void validate() const; // throws std::invalid_argument on bad values
};

/// Runs the full verification battery once (all criteria except the
/// double-run determinism record).
VerificationSummary run_all_checks(const VerifyConfig& cfg);

/// Runs the battery twice and appends the report-determinism record
/// comparing the serialized runs byte for byte.
VerificationSummary verify_all(const VerifyConfig& cfg);

/// Deterministic JSON serialization (stable field and record order).
std::string summary_to_json(const VerificationSummary& s);

} // namespace tml
