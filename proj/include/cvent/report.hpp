#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvent/criteria.hpp"

namespace cvent {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kReportFormat = "cvent-report-1";

// One completed run of the state-test command; serializable and
// re-loadable bit-identically.
struct RunRecord {
    std::string format = kReportFormat;
    std::string version = kLibraryVersion;
    std::string state_spec;
    double theta_step = 0.0;
    std::vector<double> a_values;
    int grid_points = 0;
    double grid_span = 0.0; // 0 = auto
    std::optional<std::uint64_t> seed;
    double wall_time_s = 0.0;
    std::vector<CriterionReport> reports;
    std::vector<std::string> errors;

    bool any_violated() const;
};

std::string to_text(const RunRecord& rec);
RunRecord parse_report(const std::string& text);

// Exact decimal formatting that round-trips IEEE doubles.
std::string format_double(double v);

// State descriptor parsing, e.g. "noon:N=3", "eta:sp=1,sm=0.5",
// "cat:alpha=1,p=0", "tmsv:r=0.5", "random:D=2,seed=7", "phi".
// Returns the state and, for random states, the seed used.
struct ParsedState {
    State state;
    std::optional<std::uint64_t> seed;
};
ParsedState parse_state_spec(const std::string& spec);

} // namespace cvent
