#include <doctest.h>

#include <cmath>
#include <vector>

#include "ordgap/approx.hpp"
#include "ordgap/gaps.hpp"
#include "ordgap/mc.hpp"

using namespace ordgap;

namespace {

// Independent oracle for the uniform(0,1) gap: composite Simpson evaluation
// of C(n,k) x^k (1-x)^{n-k} on [0,1], no shared code with the adaptive path.
double uniform_gap_oracle(int n, int k, int panels = 20000) {
    auto f = [&](double x) {
        return std::exp(log_binomial(n, k) + k * std::log(x) + (n - k) * std::log1p(-x));
    };
    double h = 1.0 / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        double a = i * h, b = a + h, m = a + 0.5 * h;
        double fa = i == 0 ? 0.0 : f(a);
        double fb = i == panels - 1 ? 0.0 : f(b);
        sum += h / 6.0 * (fa + 4.0 * f(m) + fb);
    }
    return sum;
}

std::vector<DistributionSpec> ihr_zoo() {
    std::vector<DistributionSpec> out;
    out.push_back(make_builtin("exp:lambda=1,L=0"));
    out.push_back(make_builtin("truncexp:lambda=1,L=0,M=0.693147180559945"));
    out.push_back(make_builtin("uniform:a=0,b=1"));
    out.push_back(make_builtin("weibull:shape=1.5,scale=1"));
    out.push_back(make_builtin("weibull:shape=2,scale=1"));
    out.push_back(make_builtin("weibull:shape=3,scale=1"));
    out.push_back(make_builtin("gompertz:a=1,b=1"));
    return out;
}

}  // namespace

TEST_CASE("uniform gaps equal 1/(n+1) for every k; oracle agrees") {
    auto u = make_builtin("uniform:a=0,b=1");
    // Frozen spot values backed by the Simpson oracle.
    CHECK(uniform_gap_oracle(3, 1) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(uniform_gap_oracle(5, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    CHECK(gap_expectation(u, 3, 1).value == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(gap_expectation(u, 5, 2).value == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
    for (int n = 2; n <= 9; ++n)
        for (int k = 1; k <= n - 1; ++k) {
            double got = gap_expectation(u, n, k).value;
            CHECK(std::fabs(got - 1.0 / (n + 1)) < 1e-10);
            CHECK(std::fabs(got - uniform_gap_oracle(n, k)) < 1e-8);
        }
}

TEST_CASE("exponential gaps are 1/lambda") {
    auto e1 = make_builtin("exp:lambda=1,L=0");
    CHECK(gap_expectation(e1, 2, 1).value == doctest::Approx(1.0).epsilon(1e-10));
    auto e2 = make_builtin("exp:lambda=2,L=0");
    CHECK(r_direct(e2, 7).value == doctest::Approx(0.5).epsilon(1e-10));
    auto shifted = make_builtin("exp:lambda=3,L=2");
    CHECK(r_direct(shifted, 4).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("r_direct closed forms") {
    auto u = make_builtin("uniform:a=0,b=1");
    CHECK(r_direct(u, 4).value == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(r_direct(u, 1).value == doctest::Approx(0.5).epsilon(1e-10));  // E X_1
    auto t = make_builtin("truncexp:lambda=1,L=0,M=0.693147180559945");
    CHECK(r_direct(t, 3).value == doctest::Approx(0.125).epsilon(1e-8));
}

TEST_CASE("r_stieltjes closed forms and atom handling") {
    auto t = make_builtin("truncexp:lambda=1,L=0,M=0.693147180559945");
    // Entirely from the atom term mu(M-) F^2(M-) = 1 * (1/2)^2.
    auto g = r_stieltjes(t, 2);
    CHECK(g.value == doctest::Approx(0.25).epsilon(1e-12));

    auto e = make_builtin("exp:lambda=1,L=0");
    // mu constant: the whole value is the boundary term at infinity.
    CHECK(r_stieltjes(e, 10).value == doctest::Approx(1.0).epsilon(1e-10));

    auto u = make_builtin("uniform:a=0,b=1");
    CHECK(r_stieltjes(u, 2).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::fabs(r_stieltjes(u, 2).value - r_direct(u, 2).value) < 1e-9);
}

TEST_CASE("r_stieltjes refuses non-IHR inputs with a distinct error") {
    auto w = make_builtin("weibull:shape=0.5,scale=1");
    CHECK_THROWS_AS(r_stieltjes(w, 3), NotIhrError);
    auto osc = oscillating_hazard_dist(0.5);
    CHECK_THROWS_AS(r_stieltjes(osc, 3), NotIhrError);
    CHECK_THROWS_AS(cm_witness(osc, 3, 1), NotIhrError);
}

TEST_CASE("r_continuous examples and integer consistency") {
    auto e = make_builtin("exp:lambda=1,L=0");
    CHECK(r_continuous(e, 2.5).value == doctest::Approx(1.0).epsilon(1e-10));
    auto u = make_builtin("uniform:a=0,b=1");
    CHECK(r_continuous(u, 2.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(r_continuous(u, 3.5).value == doctest::Approx(1.0 / 4.5).epsilon(1e-10));
    for (const auto& d : ihr_zoo())
        for (int n = 2; n <= 12; ++n)
            CHECK(std::fabs(r_continuous(d, n).value - r_direct(d, n).value) < 1e-8);
    CHECK_THROWS_AS(r_continuous(u, 0.5), DomainError);
}

TEST_CASE("cm_witness examples") {
    auto e = make_builtin("exp:lambda=1,L=0");
    CHECK(std::fabs(cm_witness(e, 5, 1).value) < 1e-10);  // constant sequence

    auto u = make_builtin("uniform:a=0,b=1");
    CHECK(cm_witness(u, 2, 1).value == doctest::Approx(1.0 / 12.0).epsilon(1e-9));

    auto t = make_builtin("truncexp:lambda=1,L=0,M=0.693147180559945");
    CHECK(cm_witness(t, 3, 2).value == doctest::Approx(0.03125).epsilon(1e-12));

    // k = 0 reduces to R_n itself.
    CHECK(cm_witness(u, 3, 0).value == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("cm_witness difference consistency") {
    for (const auto& d : ihr_zoo()) {
        for (int n : {2, 4, 7, 10}) {
            double w1 = cm_witness(d, n, 1).value;
            double diff = r_direct(d, n).value - r_direct(d, n + 1).value;
            CHECK(std::fabs(w1 - diff) < 1e-8);
        }
        for (int n : {2, 5}) {
            for (int k = 1; k <= 5; ++k) {
                double lhs = cm_witness(d, n, k).value;
                double rhs = cm_witness(d, n, k - 1).value - cm_witness(d, n + 1, k - 1).value;
                CHECK(std::fabs(lhs - rhs) < 1e-8);
            }
        }
    }
}

TEST_CASE("nonnegativity of gaps and witnesses") {
    for (const auto& d : ihr_zoo()) {
        for (int n : {2, 5, 11}) {
            CHECK(r_direct(d, n).value >= 0.0);
            for (int k = 1; k <= std::min(4, n - 1); ++k)
                CHECK(gap_expectation(d, n, k).value >= 0.0);
            for (int k = 0; k <= 4; ++k) CHECK(cm_witness(d, n, k).value >= -1e-9);
        }
    }
}

TEST_CASE("method agreement across the IHR zoo for n in [2,20]") {
    for (const auto& d : ihr_zoo()) {
        for (int n = 2; n <= 20; ++n) {
            auto gd = r_direct(d, n);
            auto gs = r_stieltjes(d, n);
            double diff = std::fabs(gd.value - gs.value);
            CHECK(diff <= 1e-6);
            CHECK(diff <= 10.0 * (gd.err_estimate + gs.err_estimate) + 1e-12);
        }
    }
}

TEST_CASE("method agreement holds for a black-box cdf spec") {
    auto d = from_cdf([](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); });
    for (int n : {2, 5}) {
        double vd = r_direct(d, n).value;
        CHECK(std::fabs(vd - 1.0) <= 1e-6);
    }
}

TEST_CASE("stieltjes with a step-hazard table is purely atomic") {
    // Step hazard: mu is piecewise constant, so d(-mu) consists of the two
    // interior atoms plus the boundary proxy at infinity.
    auto d = from_hazard_table({0.0, 1.0, 2.0}, {1.0, 2.0, 4.0}, HazardInterp::step);
    for (int n : {2, 3, 5}) {
        auto gs = r_stieltjes(d, n);
        double f1 = d.cdf(1.0), f2 = d.cdf(2.0);
        double expected = std::pow(f1, n) * (1.0 - 0.5) + std::pow(f2, n) * (0.5 - 0.25) + 0.25;
        CHECK(gs.value == doctest::Approx(expected).epsilon(1e-9));
        CHECK(std::fabs(gs.value - r_direct(d, n).value) < 1e-8);
    }
}

TEST_CASE("stieltjes with a linear hazard table matches the direct route") {
    std::vector<double> xs, ls;
    for (int i = 0; i <= 16; ++i) {
        xs.push_back(0.25 * i);
        ls.push_back(1.0 + 0.25 * i);
    }
    auto d = from_hazard_table(xs, ls, HazardInterp::linear);
    for (int n : {2, 4, 8}) {
        double diff = std::fabs(r_stieltjes(d, n).value - r_direct(d, n).value);
        CHECK(diff < 1e-7);
    }
}

TEST_CASE("numeric slope fallback stays close to the analytic route") {
    auto g = make_builtin("gompertz:a=1,b=1");
    DistributionSpec no_slope = g;
    no_slope.inverse_hazard_slope = nullptr;
    for (int n : {2, 6}) {
        double a = r_stieltjes(g, n).value;
        double b = r_stieltjes(no_slope, n).value;
        CHECK(std::fabs(a - b) < 1e-7);
    }
}

TEST_CASE("telescoping gaps sum to the Monte Carlo extreme range") {
    auto u = make_builtin("uniform:a=0,b=1");
    auto e = make_builtin("exp:lambda=1,L=0");
    for (const auto& d : {u, e}) {
        for (int n : {3, 5, 8}) {
            double sum = 0.0;
            for (int k = 1; k <= n - 1; ++k) sum += gap_expectation(d, n, k).value;
            auto mc = mc_extreme_range(d, n, 400000, 2026);
            CHECK(std::fabs(sum - mc.mean) <= 4.0 * mc.std_error);
        }
    }
}

TEST_CASE("cm_witness beyond the depth cap is flagged low confidence") {
    auto u = make_builtin("uniform:a=0,b=1");
    auto g = cm_witness(u, 2, 13);
    CHECK(g.low_confidence);
    CHECK_FALSE(cm_witness(u, 2, 5).low_confidence);
}

TEST_CASE("argument validation") {
    auto u = make_builtin("uniform:a=0,b=1");
    CHECK_THROWS_AS(gap_expectation(u, 1, 1), DomainError);
    CHECK_THROWS_AS(gap_expectation(u, 3, 3), DomainError);
    CHECK_THROWS_AS(r_direct(u, 0), DomainError);
    CHECK_THROWS_AS(r_stieltjes(u, 1), DomainError);
    CHECK_THROWS_AS(cm_witness(u, 2, -1), DomainError);
    QuadratureConfig bad;
    bad.tail_mass = 0.1;
    CHECK_THROWS_AS(r_direct(u, 2, bad), DomainError);
    CHECK_THROWS_AS(compute_sequence(u, 2, 5, Method::mc), DomainError);
}

TEST_CASE("log_binomial stays finite far beyond double overflow of C(n,k)") {
    CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
    CHECK(std::isfinite(log_binomial(100000, 50000)));
    CHECK_THROWS_AS(log_binomial(3, 4), DomainError);
}
