// ordgap: expected gaps between the top order statistics of iid samples,
// computed by direct quadrature, the Stieltjes representation, the
// real-argument extension, or Monte Carlo, plus structural sequence checks.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ordgap/approx.hpp"
#include "ordgap/gaps.hpp"
#include "ordgap/mc.hpp"
#include "ordgap/monotone.hpp"
#include "ordgap/report.hpp"

namespace {

using namespace ordgap;

struct NRange {
    int lo = 2;
    int hi = 2;
};

NRange parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(text);
            return {v, v};
        }
        NRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
        if (r.hi < r.lo) throw ParseError("");
        return r;
    } catch (...) {
        throw ParseError("--n expects A..B with integers A <= B, got '" + text + "'");
    }
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(method_from_string(item));
    if (out.empty()) throw ParseError("--method expects a nonempty list");
    return out;
}

std::vector<double> parse_xlist(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            throw ParseError("--x expects comma-separated numbers, got '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw Error("cannot open output file " + output_path);
    f << text;
}

struct CommonOpts {
    std::string dist_spec;
    std::string n_text = "2..10";
    int k = -1;
    std::string methods_text = "direct";
    double u = 0.0;
    bool u_set = false;
    std::uint64_t samples = defaults::kMcSamples;
    std::uint64_t seed = defaults::kMcSeed;
    int shards = defaults::kMcShards;
    int max_order = defaults::kMaxOrder;
    QuadratureConfig quad;
    std::string out_format = "csv";
    std::string output_path;
};

void add_quad_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--rel-tol", o.quad.rel_tol, "relative quadrature tolerance");
    cmd->add_option("--abs-tol", o.quad.abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--tail-mass", o.quad.tail_mass, "survival mass truncated at unbounded ends");
    cmd->add_option("--max-subdivisions", o.quad.max_subdivisions, "quadrature panel budget");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output", o.output_path, "write the report to this path");
}

int run_gaps(const CommonOpts& o) {
    DistributionSpec dist = make_builtin(o.dist_spec);
    NRange range = parse_range(o.n_text);
    auto methods = parse_methods(o.methods_text);

    std::vector<GapValue> rows;
    for (int n = range.lo; n <= range.hi; ++n) {
        for (Method m : methods) {
            switch (m) {
                case Method::direct:
                    rows.push_back(o.k > 0 ? gap_expectation(dist, n, o.k, o.quad)
                                           : r_direct(dist, n, o.quad));
                    break;
                case Method::stieltjes:
                    if (o.k > 0) throw DomainError("--k applies to direct and mc methods only");
                    rows.push_back(r_stieltjes(dist, n, o.quad));
                    break;
                case Method::continuous:
                    if (o.k > 0) throw DomainError("--k applies to direct and mc methods only");
                    rows.push_back(r_continuous(dist, n, o.quad));
                    break;
                case Method::mc: {
                    int k = o.k > 0 ? o.k : n - 1;
                    MCEstimate est = mc_gap(dist, n, k, o.samples, o.seed, o.shards);
                    GapValue g;
                    g.n = n;
                    g.k = k;
                    g.u = n;
                    g.value = est.mean;
                    g.err_estimate = est.std_error;
                    g.method = Method::mc;
                    rows.push_back(g);
                    break;
                }
            }
        }
    }
    if (o.u_set) rows.push_back(r_continuous(dist, o.u, o.quad));

    std::stable_sort(rows.begin(), rows.end(), [](const GapValue& a, const GapValue& b) {
        if (a.u != b.u) return a.u < b.u;
        return static_cast<int>(a.method) < static_cast<int>(b.method);
    });
    emit(o.out_format == "json" ? gaps_to_json(dist.name, rows) : gaps_to_csv(rows),
         o.output_path);
    return 0;
}

int run_check(const CommonOpts& o) {
    DistributionSpec dist = make_builtin(o.dist_spec);
    NRange range = parse_range(o.n_text);
    Method method = parse_methods(o.methods_text).front();
    GapSequence seq = compute_sequence(dist, range.lo, range.hi, method, o.quad);
    MonotonicityReport rep = check_all(seq, o.max_order);
    std::optional<StrictnessReport> strict;
    if (seq.values.size() >= 3 && (dist.shifted_exponential || dist.truncated_exponential))
        strict = strictness_check(seq, dist.shifted_exponential, dist.truncated_exponential);

    emit(o.out_format == "json" ? report_to_json(dist.name, seq, rep, strict)
                                : report_to_csv(seq, rep),
         o.output_path);

    bool any_fail = rep.decreasing.verdict == Verdict::fail ||
                    rep.difference_monotone.verdict == Verdict::fail ||
                    rep.ratio_monotone.verdict == Verdict::fail ||
                    rep.log_convex.verdict == Verdict::fail;
    for (const auto& ord : rep.cm_orders)
        if (ord.verdict == Verdict::fail) any_fail = true;
    return any_fail ? 3 : 0;
}

int run_mc(const CommonOpts& o) {
    DistributionSpec dist = make_builtin(o.dist_spec);
    NRange range = parse_range(o.n_text);
    std::vector<std::pair<std::pair<int, int>, MCEstimate>> rows;
    for (int n = range.lo; n <= range.hi; ++n) {
        int k = o.k > 0 ? o.k : n - 1;
        rows.push_back({{n, k}, mc_gap(dist, n, k, o.samples, o.seed, o.shards)});
    }
    emit(o.out_format == "json" ? mc_to_json(dist.name, rows) : mc_to_csv(rows), o.output_path);
    return 0;
}

int run_approx(const CommonOpts& o) {
    DistributionSpec dist = make_builtin(o.dist_spec);
    NRange range = parse_range(o.n_text);
    std::vector<ApproxResult> rows;
    for (int n = range.lo; n <= range.hi; ++n)
        rows.push_back(quantile_hazard_approx(dist, n, o.quad));
    emit(o.out_format == "json" ? approx_to_json(dist.name, rows) : approx_to_csv(rows),
         o.output_path);
    return 0;
}

int run_probe(const CommonOpts& o, const std::string& x_text) {
    DistributionSpec dist = make_builtin(o.dist_spec);
    std::vector<double> xs;
    if (!x_text.empty()) {
        xs = parse_xlist(x_text);
    } else {
        for (int i = 1; i <= 9; ++i) xs.push_back(dist.quantile(i / 10.0));
    }
    std::vector<std::pair<double, ProbeResult>> rows;
    for (double x : xs) rows.push_back({x, probe(dist, x)});
    emit(o.out_format == "json" ? probes_to_json(dist.name, rows) : probes_to_csv(rows),
         o.output_path);
    return 0;
}

int run_dist_list(const CommonOpts& o) {
    std::string out;
    for (const auto& line : builtin_distributions()) out += line + "\n";
    emit(out, o.output_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expected gaps of top order statistics via quadrature, Stieltjes "
                 "representation and Monte Carlo"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string x_text;

    auto* gaps = app.add_subcommand("gaps", "compute R_n (or the k-th gap) over an n range");
    auto* check = app.add_subcommand(
        "check", "verify decreasing / ratio / log-convex / completely-monotone structure");
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates of gaps");
    auto* approx = app.add_subcommand("approx", "quantile-hazard approximation table");
    auto* probe_cmd = app.add_subcommand("dist-probe", "evaluate F, phi, hazard at points");
    auto* list = app.add_subcommand("dist-list", "list the distribution mini-language");

    for (CLI::App* cmd : {gaps, check, mc, approx, probe_cmd}) {
        cmd->add_option("--dist", o.dist_spec, "distribution spec, e.g. exp:lambda=1,L=0")
            ->required();
    }
    for (CLI::App* cmd : {gaps, check, mc, approx}) cmd->add_option("--n", o.n_text, "range A..B");
    for (CLI::App* cmd : {gaps, mc}) cmd->add_option("--k", o.k, "gap index (default n-1)");
    gaps->add_option("--method", o.methods_text, "comma list: direct,stieltjes,continuous,mc");
    check->add_option("--method", o.methods_text, "sequence source method");
    gaps->add_option("--u", o.u, "evaluate R(u) at a real argument u >= 1")
        ->each([&](const std::string&) { o.u_set = true; });
    for (CLI::App* cmd : {gaps, mc}) {
        cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
        cmd->add_option("--seed", o.seed, "Monte Carlo seed");
        cmd->add_option("--shards", o.shards, "parallel shards (does not change results)");
    }
    check->add_option("--max-order", o.max_order, "highest difference order tested");
    probe_cmd->add_option("--x", x_text, "comma-separated evaluation points");
    for (CLI::App* cmd : {gaps, check, approx}) add_quad_flags(cmd, o);
    for (CLI::App* cmd : {gaps, check, mc, approx, probe_cmd, list}) add_output_flags(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gaps->parsed()) return run_gaps(o);
        if (check->parsed()) return run_check(o);
        if (mc->parsed()) return run_mc(o);
        if (approx->parsed()) return run_approx(o);
        if (probe_cmd->parsed()) return run_probe(o, x_text);
        if (list->parsed()) return run_dist_list(o);
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "grammar: ordgap <command> --dist <spec> [--n A..B] [--k K] "
                     "[--method m1,m2] [--u X.Y] [--samples N] [--seed S] [--shards C] "
                     "[--max-order K] [--rel-tol T] [--tail-mass D] [--out csv|json] "
                     "[--output PATH]\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
