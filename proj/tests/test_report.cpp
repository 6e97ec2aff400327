#include <doctest.h>

#include <cmath>
#include <cstring>

#include <json.hpp>

#include "ordgap/mc.hpp"
#include "ordgap/report.hpp"

using namespace ordgap;

namespace {

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("gaps CSV round-trips bitwise") {
    std::vector<GapValue> rows;
    // Awkward doubles: subnormal-adjacent, long mantissas, negative zero.
    double vals[] = {1.0 / 3.0, 0.1, 5e-324, 1.7976931348623157e308, -0.0,
                     0.12345678901234567, 2.2250738585072014e-308};
    int n = 2;
    for (double v : vals) {
        GapValue g;
        g.n = n++;
        g.u = g.n;
        g.value = v;
        g.err_estimate = v == 0.0 ? 0.0 : std::fabs(v) * 1e-10;
        g.method = Method::direct;
        rows.push_back(g);
    }
    auto parsed = parse_gaps_csv(gaps_to_csv(rows));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(bitwise_equal(parsed[i].value, rows[i].value));
        CHECK(bitwise_equal(parsed[i].err_estimate, rows[i].err_estimate));
        CHECK(parsed[i].n == rows[i].n);
        CHECK(parsed[i].method == rows[i].method);
    }
}

TEST_CASE("fuzzed CSV round-trip over the counter stream") {
    std::vector<GapValue> rows;
    for (int i = 0; i < 200; ++i) {
        GapValue g;
        g.n = 2 + i;
        g.u = g.n;
        // Random mantissas over a wide exponent range.
        double m = static_cast<double>(counter_rand_u64(77, i, 0)) / 1.8446744073709552e19;
        int e = static_cast<int>(counter_rand_u64(77, i, 1) % 600) - 300;
        g.value = std::ldexp(0.5 + 0.5 * m, e);
        g.err_estimate = std::ldexp(m, e - 30);
        g.method = (i % 2 == 0) ? Method::direct : Method::stieltjes;
        rows.push_back(g);
    }
    auto parsed = parse_gaps_csv(gaps_to_csv(rows));
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(bitwise_equal(parsed[i].value, rows[i].value));
        CHECK(bitwise_equal(parsed[i].err_estimate, rows[i].err_estimate));
    }
}

TEST_CASE("continuous rows serialize the real argument") {
    GapValue g;
    g.u = 2.5;
    g.n = 0;
    g.value = 1.0;
    g.method = Method::continuous;
    auto parsed = parse_gaps_csv(gaps_to_csv({g}));
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].u == 2.5);
    CHECK(parsed[0].method == Method::continuous);
}

TEST_CASE("malformed CSV is rejected") {
    CHECK_THROWS_AS(parse_gaps_csv("wrong,header\n"), ParseError);
    CHECK_THROWS_AS(parse_gaps_csv("n,method,value,err_estimate\n1,direct,zzz,0\n"), ParseError);
    CHECK_THROWS_AS(parse_gaps_csv("n,method,value,err_estimate\n1,direct,0\n"), ParseError);
    CHECK_THROWS_AS(parse_gaps_csv("n,method,value,err_estimate\n1,nosuch,0,0\n"), ParseError);
}

TEST_CASE("check report JSON carries margins, floors and witnesses") {
    GapSequence seq;
    seq.n_min = 2;
    seq.values = {0.5, 0.4, 0.45, 0.3};
    seq.err_estimates = {1e-12, 1e-12, 1e-12, 1e-12};
    auto rep = check_all(seq, 2);
    auto text = report_to_json("demo", seq, rep);
    auto j = nlohmann::json::parse(text);
    CHECK(j["dist"] == "demo");
    CHECK(j["decreasing"]["verdict"] == "fail");
    CHECK(j["decreasing"]["witness"]["n"] == 3);
    CHECK(j["decreasing"]["witness"]["R_n"] == doctest::Approx(0.4));
    CHECK(j["complete_monotonicity"]["per_order"].size() == 3);
    CHECK(j["error_floor_per_order"].size() == 3);
    CHECK(j["values"].size() == 4);

    auto csv = report_to_csv(seq, rep);
    CHECK(csv.find("decreasing,fail") != std::string::npos);
    CHECK(csv.find("cm_order_2") != std::string::npos);
}

TEST_CASE("mc and approx emitters include every column") {
    MCEstimate est;
    est.mean = 0.25;
    est.std_error = 1e-4;
    est.samples = 1000;
    est.seed = 42;
    est.shards = 2;
    auto csv = mc_to_csv({{{3, 1}, est}});
    CHECK(csv.find("n,k,mean,stderr,samples,seed,shards") == 0);
    CHECK(csv.find("3,1,0.25,") != std::string::npos);
    auto j = nlohmann::json::parse(mc_to_json("d", {{{3, 1}, est}}));
    CHECK(j["results"][0]["seed"] == 42);

    ApproxResult a;
    a.n = 4;
    a.x_n = 0.75;
    a.inv_hazard_at_xn = 0.25;
    a.r_quadrature = 0.2;
    a.abs_gap = 0.05;
    CHECK(approx_to_csv({a}).find("4,0.75,0.25,") != std::string::npos);
    auto ja = nlohmann::json::parse(approx_to_json("d", {a}));
    CHECK(ja["results"][0]["abs_gap"] == doctest::Approx(0.05));
}

TEST_CASE("probe emitter handles non-finite fields in JSON") {
    ProbeResult p;
    p.F = 1.0;
    p.survival = 0.0;
    p.phi = kInf;
    p.hazard = kNaN;
    p.inverse_hazard = kNaN;
    p.in_support = false;
    auto j = nlohmann::json::parse(probes_to_json("d", {{2.0, p}}));
    CHECK(j["results"][0]["phi"].is_string());  // inf rendered as text
    CHECK(j["results"][0]["in_support"] == false);
    auto csv = probes_to_csv({{2.0, p}});
    CHECK(csv.find("x,F,survival,phi,hazard,inverse_hazard,in_support") == 0);
}
