#include "ordgap/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace ordgap {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double parse_double_field(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw ParseError("csv: expected a number, got '" + s + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

json outcome_to_json(const CheckOutcome& o, int n_min, int row_offset) {
    json j;
    j["verdict"] = to_string(o.verdict);
    j["worst_margin"] = o.worst_margin;
    j["floor"] = o.floor;
    if (o.witness_index >= 0) j["witness_n"] = n_min + row_offset + o.witness_index;
    return j;
}

}  // namespace

std::string gaps_to_csv(const std::vector<GapValue>& rows) {
    std::string out = "n,method,value,err_estimate\n";
    for (const auto& g : rows) {
        double ncol = g.method == Method::continuous ? g.u : static_cast<double>(g.n);
        out += fmt17(ncol);
        out += ',';
        out += to_string(g.method);
        out += ',';
        out += fmt17(g.value);
        out += ',';
        out += fmt17(g.err_estimate);
        out += '\n';
    }
    return out;
}

std::vector<GapValue> parse_gaps_csv(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line) || line != "n,method,value,err_estimate")
        throw ParseError("csv: missing gaps header line");
    std::vector<GapValue> rows;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) throw ParseError("csv: expected 4 fields: " + line);
        GapValue g;
        g.u = parse_double_field(fields[0]);
        double rounded = std::round(g.u);
        g.n = std::fabs(g.u - rounded) < 1e-12 ? static_cast<int>(rounded) : 0;
        g.k = g.n > 0 ? g.n - 1 : 0;
        g.method = method_from_string(fields[1]);
        g.value = parse_double_field(fields[2]);
        g.err_estimate = parse_double_field(fields[3]);
        rows.push_back(g);
    }
    return rows;
}

std::string gaps_to_json(const std::string& dist_name, const std::vector<GapValue>& rows) {
    json j;
    j["dist"] = dist_name;
    j["results"] = json::array();
    for (const auto& g : rows) {
        json r;
        r["n"] = g.method == Method::continuous ? json(g.u) : json(g.n);
        r["method"] = to_string(g.method);
        r["value"] = g.value;
        r["err_estimate"] = g.err_estimate;
        if (g.low_confidence) r["low_confidence"] = true;
        j["results"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string report_to_json(const std::string& dist_name, const GapSequence& seq,
                           const MonotonicityReport& rep,
                           const std::optional<StrictnessReport>& strict) {
    json j;
    j["dist"] = dist_name;
    j["n_min"] = seq.n_min;
    j["n_max"] = seq.n_min + static_cast<int>(seq.values.size()) - 1;
    j["source"] = to_string(seq.source);
    j["values"] = seq.values;
    j["err_estimates"] = seq.err_estimates;
    j["decreasing"] = outcome_to_json(rep.decreasing, rep.n_min, 0);
    j["difference_monotone"] = outcome_to_json(rep.difference_monotone, rep.n_min, 0);
    j["ratio_monotone"] = outcome_to_json(rep.ratio_monotone, rep.n_min, 0);
    j["log_convex"] = outcome_to_json(rep.log_convex, rep.n_min, 0);
    if (rep.decreasing.verdict == Verdict::fail && rep.decreasing.witness_index >= 0) {
        int idx = rep.decreasing.witness_index;
        json w;
        w["n"] = rep.n_min + idx;
        w["R_n"] = seq.values[idx];
        w["R_n_plus_1"] = seq.values[idx + 1];
        j["decreasing"]["witness"] = std::move(w);
    }
    json cm;
    cm["max_order"] = static_cast<int>(rep.cm_orders.size()) - 1;
    cm["pass_to_order"] = rep.completely_monotone_to_order;
    cm["per_order"] = json::array();
    for (std::size_t k = 0; k < rep.cm_orders.size(); ++k) {
        json o = outcome_to_json(rep.cm_orders[k], rep.n_min, 0);
        o["order"] = static_cast<int>(k);
        cm["per_order"].push_back(std::move(o));
    }
    j["complete_monotonicity"] = std::move(cm);
    j["error_floor_per_order"] = rep.error_floor_per_order;
    if (rep.exploratory_below_n2) j["exploratory_below_n2"] = true;
    if (strict) {
        json s;
        s["strict_decrease"] = to_string(strict->strict_decrease);
        s["decrease_equalities"] = to_string(strict->decrease_equalities);
        s["strict_difference_decrease"] = to_string(strict->strict_difference_decrease);
        s["strict_ratio_decrease"] = to_string(strict->strict_ratio_decrease);
        s["ratio_constant"] = to_string(strict->ratio_constant);
        s["consistent_with_classification"] = strict->consistent_with_classification;
        j["strictness"] = std::move(s);
    }
    return j.dump(2) + "\n";
}

std::string report_to_csv(const GapSequence& seq, const MonotonicityReport& rep) {
    std::string out = "check,verdict,worst_margin,floor,witness_n\n";
    auto line = [&](const std::string& name, const CheckOutcome& o) {
        out += name;
        out += ',';
        out += to_string(o.verdict);
        out += ',';
        out += fmt17(o.worst_margin);
        out += ',';
        out += fmt17(o.floor);
        out += ',';
        out += o.witness_index >= 0 ? std::to_string(rep.n_min + o.witness_index) : std::string();
        out += '\n';
    };
    line("decreasing", rep.decreasing);
    line("difference_monotone", rep.difference_monotone);
    line("ratio_monotone", rep.ratio_monotone);
    line("log_convex", rep.log_convex);
    for (std::size_t k = 0; k < rep.cm_orders.size(); ++k)
        line("cm_order_" + std::to_string(k), rep.cm_orders[k]);
    (void)seq;
    return out;
}

std::string mc_to_csv(const std::vector<std::pair<std::pair<int, int>, MCEstimate>>& rows) {
    std::string out = "n,k,mean,stderr,samples,seed,shards\n";
    for (const auto& [nk, est] : rows) {
        out += std::to_string(nk.first) + ',' + std::to_string(nk.second) + ',' +
               fmt17(est.mean) + ',' + fmt17(est.std_error) + ',' +
               std::to_string(est.samples) + ',' + std::to_string(est.seed) + ',' +
               std::to_string(est.shards) + '\n';
    }
    return out;
}

std::string mc_to_json(const std::string& dist_name,
                       const std::vector<std::pair<std::pair<int, int>, MCEstimate>>& rows) {
    json j;
    j["dist"] = dist_name;
    j["results"] = json::array();
    for (const auto& [nk, est] : rows) {
        json r;
        r["n"] = nk.first;
        r["k"] = nk.second;
        r["mean"] = est.mean;
        r["stderr"] = est.std_error;
        r["samples"] = est.samples;
        r["seed"] = est.seed;
        r["shards"] = est.shards;
        j["results"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string approx_to_csv(const std::vector<ApproxResult>& rows) {
    std::string out = "n,x_n,inv_hazard_at_xn,r_quadrature,abs_gap\n";
    for (const auto& a : rows) {
        out += std::to_string(a.n) + ',' + fmt17(a.x_n) + ',' + fmt17(a.inv_hazard_at_xn) + ',' +
               fmt17(a.r_quadrature) + ',' + fmt17(a.abs_gap) + '\n';
    }
    return out;
}

std::string approx_to_json(const std::string& dist_name, const std::vector<ApproxResult>& rows) {
    json j;
    j["dist"] = dist_name;
    j["results"] = json::array();
    for (const auto& a : rows) {
        json r;
        r["n"] = a.n;
        r["x_n"] = a.x_n;
        r["inv_hazard_at_xn"] = a.inv_hazard_at_xn;
        r["r_quadrature"] = a.r_quadrature;
        r["abs_gap"] = a.abs_gap;
        j["results"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

std::string probes_to_csv(const std::vector<std::pair<double, ProbeResult>>& rows) {
    std::string out = "x,F,survival,phi,hazard,inverse_hazard,in_support\n";
    for (const auto& [x, p] : rows) {
        out += fmt17(x) + ',' + fmt17(p.F) + ',' + fmt17(p.survival) + ',' + fmt17(p.phi) + ',' +
               fmt17(p.hazard) + ',' + fmt17(p.inverse_hazard) + ',' +
               (p.in_support ? "true" : "false") + '\n';
    }
    return out;
}

std::string probes_to_json(const std::string& dist_name,
                           const std::vector<std::pair<double, ProbeResult>>& rows) {
    json j;
    j["dist"] = dist_name;
    j["results"] = json::array();
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(fmt17(v)); };
    for (const auto& [x, p] : rows) {
        json r;
        r["x"] = x;
        r["F"] = num(p.F);
        r["survival"] = num(p.survival);
        r["phi"] = num(p.phi);
        r["hazard"] = num(p.hazard);
        r["inverse_hazard"] = num(p.inverse_hazard);
        r["in_support"] = p.in_support;
        j["results"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

}  // namespace ordgap
