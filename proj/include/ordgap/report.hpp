#pragma once

// CSV and JSON emission for gap tables, monotonicity reports, Monte Carlo
// estimates, approximation tables and probe records. Decimal floats use 17
// significant digits so that CSV output round-trips losslessly.

#include <optional>
#include <string>
#include <vector>

#include "ordgap/approx.hpp"
#include "ordgap/gaps.hpp"
#include "ordgap/mc.hpp"
#include "ordgap/monotone.hpp"

namespace ordgap {

// Shortest-lossless decimal rendering (%.17g).
std::string fmt17(double v);

// Header `n,method,value,err_estimate`; rows sorted by the caller.
std::string gaps_to_csv(const std::vector<GapValue>& rows);
std::string gaps_to_json(const std::string& dist_name, const std::vector<GapValue>& rows);

// Inverse of gaps_to_csv; throws ParseError on malformed text.
std::vector<GapValue> parse_gaps_csv(const std::string& text);

std::string report_to_json(const std::string& dist_name, const GapSequence& seq,
                           const MonotonicityReport& rep,
                           const std::optional<StrictnessReport>& strict = std::nullopt);
std::string report_to_csv(const GapSequence& seq, const MonotonicityReport& rep);

std::string mc_to_csv(const std::vector<std::pair<std::pair<int, int>, MCEstimate>>& rows);
std::string mc_to_json(const std::string& dist_name,
                       const std::vector<std::pair<std::pair<int, int>, MCEstimate>>& rows);

std::string approx_to_csv(const std::vector<ApproxResult>& rows);
std::string approx_to_json(const std::string& dist_name, const std::vector<ApproxResult>& rows);

std::string probes_to_csv(const std::vector<std::pair<double, ProbeResult>>& rows);
std::string probes_to_json(const std::string& dist_name,
                           const std::vector<std::pair<double, ProbeResult>>& rows);

}  // namespace ordgap
