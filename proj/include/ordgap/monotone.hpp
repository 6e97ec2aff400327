#pragma once

// Sequence-level verification: forward-difference tables and the decreasing /
// ratio-monotone / difference-monotone / log-convex / completely-monotone
// checks, with explicit error floors derived from the per-entry estimates.

#include <vector>

#include "ordgap/gaps.hpp"

namespace ordgap {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

// Verdict rule used throughout: with per-entry slack s (s >= 0 means the
// inequality holds) and floor f,
//   fail          if some s < -f (violation beyond certified noise),
//   pass          if every s >= 0,
//   inconclusive  otherwise (a negative slack within the floor).
struct CheckOutcome {
    Verdict verdict = Verdict::inconclusive;
    double worst_margin = 0.0;  // minimum slack over the tested entries
    double floor = 0.0;
    int witness_index = -1;  // offset of the worst entry within its row
};

struct MonotonicityReport {
    int n_min = 2;
    CheckOutcome decreasing;
    CheckOutcome difference_monotone;  // R_n - R_{n+1} <= R_{n-1} - R_n
    CheckOutcome ratio_monotone;       // R_n / R_{n+1} <= R_{n-1} / R_n
    CheckOutcome log_convex;           // R_n^2 <= R_{n-1} R_{n+1}
    std::vector<CheckOutcome> cm_orders;  // orders 0..max_order
    int completely_monotone_to_order = -1;
    std::vector<double> error_floor_per_order;  // 2^k * max err_estimate
    bool exploratory_below_n2 = false;          // n_min < 2 included in the input
};

// Rows Delta^0..Delta^max_order; row k entry j is Delta^k R_{n_min+j},
// built by repeated subtraction so that
// row[k][j] == row[k-1][j+1] - row[k-1][j] holds exactly.
std::vector<std::vector<double>> difference_table(const GapSequence& seq, int max_order);

MonotonicityReport check_all(const GapSequence& seq, int max_order = 8);

// Strict-inequality verdicts keyed by closed-form classification flags.
// Constant-hazard distributions must show equalities within the floor;
// the truncated-exponential family must show constant ratios; everything
// else must show the strict inequalities beyond the floor.
struct StrictnessReport {
    Verdict strict_decrease;             // R_{n+1} < R_n beyond floor
    Verdict decrease_equalities;         // differences within floor of zero
    Verdict strict_difference_decrease;  // second differences positive beyond floor
    Verdict strict_ratio_decrease;       // ratio sequence strictly decreasing
    Verdict ratio_constant;              // ratios constant within floor
    bool consistent_with_classification = false;
};

StrictnessReport strictness_check(const GapSequence& seq, bool dist_is_shifted_exponential,
                                  bool dist_is_truncated_exponential);

}  // namespace ordgap
