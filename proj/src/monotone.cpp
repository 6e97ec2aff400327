#include "ordgap/monotone.hpp"

#include <algorithm>
#include <cmath>

namespace ordgap {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<std::vector<double>> difference_table(const GapSequence& seq, int max_order) {
    const auto& R = seq.values;
    if (R.size() < 2 || R.size() != seq.err_estimates.size())
        throw DomainError("difference_table: need matching value/error lists of length >= 2");
    if (max_order < 0 || max_order >= static_cast<int>(R.size()))
        throw DomainError("difference_table: max_order must be below the sequence length");
    std::vector<std::vector<double>> rows;
    rows.reserve(max_order + 1);
    rows.push_back(R);
    for (int k = 1; k <= max_order; ++k) {
        const auto& prev = rows.back();
        std::vector<double> row(prev.size() - 1);
        for (std::size_t j = 0; j + 1 < prev.size(); ++j) row[j] = prev[j + 1] - prev[j];
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

struct Entry {
    double slack;
    double floor;
};

CheckOutcome assess(const std::vector<Entry>& entries) {
    CheckOutcome out;
    if (entries.empty()) {
        out.verdict = Verdict::inconclusive;
        return out;
    }
    bool any_fail = false;
    bool all_nonneg = true;
    double worst = kInf;
    double max_floor = 0.0;
    int worst_idx = -1;
    for (std::size_t j = 0; j < entries.size(); ++j) {
        const auto& e = entries[j];
        if (e.slack < worst) {
            worst = e.slack;
            worst_idx = static_cast<int>(j);
        }
        max_floor = std::max(max_floor, e.floor);
        if (e.slack < -e.floor) any_fail = true;
        if (e.slack < 0) all_nonneg = false;
    }
    out.worst_margin = worst;
    out.floor = max_floor;
    out.witness_index = worst_idx;
    out.verdict = any_fail ? Verdict::fail : (all_nonneg ? Verdict::pass : Verdict::inconclusive);
    return out;
}

}  // namespace

MonotonicityReport check_all(const GapSequence& seq, int max_order) {
    const auto& R = seq.values;
    const std::size_t len = R.size();
    if (len < 2 || len != seq.err_estimates.size())
        throw DomainError("check_all: need matching value/error lists of length >= 2");
    double E = 0.0;
    for (double e : seq.err_estimates) E = std::max(E, e);

    MonotonicityReport rep;
    rep.n_min = seq.n_min;
    rep.exploratory_below_n2 = seq.n_min < 2;
    max_order = std::min<int>(max_order, static_cast<int>(len) - 1);
    // Row 2 also serves the difference-monotone check, so build at least that.
    const int table_order = std::min<int>(static_cast<int>(len) - 1, std::max(max_order, 2));
    auto table = difference_table(seq, table_order);

    // Decreasing: R_j - R_{j+1} >= 0, floor 2E.
    {
        std::vector<Entry> es;
        for (std::size_t j = 0; j + 1 < len; ++j) es.push_back({R[j] - R[j + 1], 2.0 * E});
        rep.decreasing = assess(es);
    }

    // Difference form: second differences >= 0, floor 4E.
    {
        std::vector<Entry> es;
        if (len >= 3 && table_order >= 2)
            for (std::size_t j = 0; j + 2 < len; ++j) es.push_back({table[2][j], 4.0 * E});
        rep.difference_monotone = assess(es);
    }

    // Ratio form: R_j / R_{j+1} nonincreasing. Needs resolvable positive values.
    {
        std::vector<Entry> es;
        bool resolvable = len >= 3;
        for (double v : R)
            if (!(v > 2.0 * E) || !(v > 0)) resolvable = false;
        if (resolvable) {
            for (std::size_t j = 0; j + 2 < len; ++j) {
                double r0 = R[j] / R[j + 1];
                double r1 = R[j + 1] / R[j + 2];
                double floor = E * ((1.0 + r0) / R[j + 1] + (1.0 + r1) / R[j + 2]);
                es.push_back({r0 - r1, floor});
            }
        }
        rep.ratio_monotone = assess(es);
    }

    // Log-convexity: R_j R_{j+2} - R_{j+1}^2 >= 0.
    {
        std::vector<Entry> es;
        if (len >= 3) {
            for (std::size_t j = 0; j + 2 < len; ++j) {
                double floor = E * (R[j] + R[j + 2] + 2.0 * R[j + 1]) + 2.0 * E * E;
                es.push_back({R[j] * R[j + 2] - R[j + 1] * R[j + 1], floor});
            }
        }
        rep.log_convex = assess(es);
    }

    // Complete monotonicity: (-1)^k Delta^k >= 0 with floor 2^k E per order.
    rep.cm_orders.reserve(max_order + 1);
    rep.error_floor_per_order.reserve(max_order + 1);
    rep.completely_monotone_to_order = -1;
    bool chain = true;
    for (int k = 0; k <= max_order; ++k) {
        double floor = std::ldexp(E, k);  // 2^k * E
        rep.error_floor_per_order.push_back(floor);
        std::vector<Entry> es;
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (double v : table[k]) es.push_back({sign * v, floor});
        rep.cm_orders.push_back(assess(es));
        if (chain && rep.cm_orders.back().verdict == Verdict::pass)
            rep.completely_monotone_to_order = k;
        else
            chain = false;
    }
    return rep;
}

StrictnessReport strictness_check(const GapSequence& seq, bool dist_is_shifted_exponential,
                                  bool dist_is_truncated_exponential) {
    const auto& R = seq.values;
    const std::size_t len = R.size();
    if (len < 3 || len != seq.err_estimates.size())
        throw DomainError("strictness_check: need matching lists of length >= 3");
    double E = 0.0;
    for (double e : seq.err_estimates) E = std::max(E, e);
    const double f1 = 2.0 * E;
    const double f2 = 4.0 * E;

    StrictnessReport rep{};

    // First differences d_j = R_j - R_{j+1}.
    bool all_strict = true, any_violation = false, all_tied = true;
    for (std::size_t j = 0; j + 1 < len; ++j) {
        double dd = R[j] - R[j + 1];
        if (!(dd > f1)) all_strict = false;
        if (dd < -f1) any_violation = true;
        if (std::fabs(dd) > f1) all_tied = false;
    }
    rep.strict_decrease =
        any_violation ? Verdict::fail : (all_strict ? Verdict::pass : Verdict::inconclusive);
    rep.decrease_equalities = all_tied ? Verdict::pass : Verdict::fail;

    // Second differences.
    bool strict2 = true, viol2 = false;
    for (std::size_t j = 0; j + 2 < len; ++j) {
        double s = R[j] - 2.0 * R[j + 1] + R[j + 2];
        if (!(s > f2)) strict2 = false;
        if (s < -f2) viol2 = true;
    }
    rep.strict_difference_decrease =
        viol2 ? Verdict::fail : (strict2 ? Verdict::pass : Verdict::inconclusive);

    // Ratios r_j = R_j / R_{j+1}.
    bool ratios_ok = true;
    for (double v : R)
        if (!(v > f1) || !(v > 0)) ratios_ok = false;
    if (!ratios_ok) {
        rep.strict_ratio_decrease = Verdict::inconclusive;
        rep.ratio_constant = Verdict::inconclusive;
    } else {
        std::vector<double> r(len - 1);
        std::vector<double> rf(len - 1);
        for (std::size_t j = 0; j + 1 < len; ++j) {
            r[j] = R[j] / R[j + 1];
            rf[j] = E * (1.0 + r[j]) / R[j + 1];
        }
        bool strict_r = true, viol_r = false;
        for (std::size_t j = 0; j + 1 < r.size(); ++j) {
            double s = r[j] - r[j + 1];
            double f = rf[j] + rf[j + 1];
            if (!(s > f)) strict_r = false;
            if (s < -f) viol_r = true;
        }
        rep.strict_ratio_decrease =
            viol_r ? Verdict::fail : (strict_r ? Verdict::pass : Verdict::inconclusive);
        double rbar = 0.0;
        for (double v : r) rbar += v;
        rbar /= static_cast<double>(r.size());
        bool constant = true;
        for (std::size_t j = 0; j < r.size(); ++j)
            if (std::fabs(r[j] - rbar) > 2.0 * rf[j]) constant = false;
        rep.ratio_constant = constant ? Verdict::pass : Verdict::fail;
    }

    if (dist_is_shifted_exponential) {
        rep.consistent_with_classification = rep.decrease_equalities == Verdict::pass &&
                                             rep.ratio_constant != Verdict::fail;
    } else if (dist_is_truncated_exponential) {
        rep.consistent_with_classification = rep.strict_decrease == Verdict::pass &&
                                             rep.strict_difference_decrease == Verdict::pass &&
                                             rep.ratio_constant == Verdict::pass;
    } else {
        rep.consistent_with_classification = rep.strict_decrease == Verdict::pass &&
                                             rep.strict_difference_decrease == Verdict::pass &&
                                             rep.strict_ratio_decrease == Verdict::pass;
    }
    return rep;
}

}  // namespace ordgap
