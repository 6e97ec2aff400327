#include "ordgap/gaps.hpp"

#include <algorithm>
#include <cmath>

namespace ordgap {

const char* to_string(Method m) {
    switch (m) {
        case Method::direct: return "direct";
        case Method::stieltjes: return "stieltjes";
        case Method::continuous: return "continuous";
        case Method::mc: return "mc";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "direct") return Method::direct;
    if (s == "stieltjes") return Method::stieltjes;
    if (s == "continuous") return Method::continuous;
    if (s == "mc") return Method::mc;
    throw ParseError("unknown method '" + s + "'");
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) throw DomainError("log_binomial: k must lie in [0, n]");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

// log F with full relative precision, from phi = -log(1 - F).
inline double log_cdf_from_phi(double phi) {
    if (!(phi > 0)) return -kInf;
    return std::log(-std::expm1(-phi));
}

// Integration window. The lower end starts at L itself when L is finite (the
// integrands vanish or stay bounded there); otherwise at the tail_mass
// quantile with an error estimate. The upper end is the 1 - tail_mass
// quantile, which lands exactly on M for distributions with an atom.
struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

Window window_for(const DistributionSpec& d, double tail_mass) {
    Window w;
    w.hi = d.quantile(1.0 - tail_mass);
    w.lo = std::isfinite(d.bounds.lower) ? d.bounds.lower : d.quantile(tail_mass);
    return w;
}

// Dyadic quantile ladder: knots at survival 2^-j and mass 2^-j. These bracket
// the concentration region of F^a (1-F)^b for every exponent pair, so the
// panel count stays flat in n.
std::vector<double> ladder_knots(const DistributionSpec& d, double lo, double hi,
                                 double tail_mass) {
    std::vector<double> ks;
    ks.reserve(130);
    for (int j = 1; j <= 60; ++j) {
        double p = std::ldexp(1.0, -j);
        if (p < tail_mass) break;
        ks.push_back(d.quantile(p));
        ks.push_back(d.quantile(1.0 - p));
    }
    std::sort(ks.begin(), ks.end());
    std::vector<double> out;
    out.reserve(ks.size());
    for (double x : ks) {
        if (!(x > lo) || !(x < hi)) continue;
        if (!out.empty() && !(x > out.back() + 1e-14 * std::max(1.0, std::fabs(x)))) continue;
        out.push_back(x);
    }
    return out;
}

// Relaxed-tolerance mass of (1-F) above x_hi, used for certified tail bounds.
// For a finite M without an atom the remainder is covered by (M - x_hi) * delta.
double survival_tail_mass(const DistributionSpec& d, double x_hi, double tail_mass) {
    if (x_hi >= d.bounds.upper) return 0.0;
    if (std::isfinite(d.bounds.upper)) return (d.bounds.upper - x_hi) * tail_mass;
    const double delta2 = tail_mass * 1e-3;
    double x2 = d.quantile(1.0 - delta2);
    double q = 0.0;
    if (x2 > x_hi) {
        auto r = integrate_adaptive([&](double x) { return std::exp(-d.log_survival(x)); }, x_hi,
                                    x2, 1e-6, 1e-300, 800);
        q = r.value;
    } else {
        x2 = x_hi;
    }
    double mu2 = d.inverse_hazard(x2);
    if (!std::isfinite(mu2) || mu2 < 0) mu2 = 0.0;
    return q + delta2 * mu2;
}

GapValue integrate_occupancy(const DistributionSpec& d, double log_coeff, double pow_cdf,
                             double pow_survival, const QuadratureConfig& cfg) {
    // integral of exp(log_coeff) * F^pow_cdf * (1-F)^pow_survival dx
    // with pow_survival >= 1, evaluated through phi alone.
    const double delta = cfg.tail_mass;
    Window w = window_for(d, delta);

    auto integrand = [&](double x) -> double {
        double phi = d.log_survival(x);
        if (!std::isfinite(phi)) {
            if (phi > 0) return 0.0;  // F = 1
            throw EvalError("log_survival returned a non-finite value");
        }
        if (pow_cdf == 0.0) return std::exp(log_coeff - pow_survival * phi);
        double lf = log_cdf_from_phi(phi);
        if (!std::isfinite(lf)) return 0.0;  // F = 0
        return std::exp(log_coeff + pow_cdf * lf - pow_survival * phi);
    };

    GapValue g;
    double lower_err = 0.0;
    if (!std::isfinite(d.bounds.lower)) {
        // Truncated below at the tail_mass quantile; crude remainder estimate.
        lower_err = std::exp(log_coeff + std::max(0.0, pow_cdf - 1.0) * std::log(delta)) * delta *
                    (std::fabs(w.lo) + 1.0);
    }
    auto knots = ladder_knots(d, w.lo, w.hi, delta);
    auto q = integrate_adaptive(integrand, w.lo, w.hi, cfg.rel_tol, cfg.abs_tol,
                                cfg.max_subdivisions, knots);
    // Above x_hi the integrand is at most exp(log_coeff) delta^(pow_survival-1) (1-F).
    double tail_coeff = std::exp(log_coeff + (pow_survival - 1.0) * std::log(delta));
    double upper_err = tail_coeff * survival_tail_mass(d, w.hi, delta);
    g.value = q.value;
    g.err_estimate = q.err + upper_err + lower_err;
    return g;
}

}  // namespace

GapValue gap_expectation(const DistributionSpec& d, int n, int k, const QuadratureConfig& cfg) {
    validate(cfg);
    if (n < 2 || k < 1 || k > n - 1)
        throw DomainError("gap_expectation: requires n >= 2 and 1 <= k <= n-1");
    GapValue g = integrate_occupancy(d, log_binomial(n, k), static_cast<double>(k),
                                     static_cast<double>(n - k), cfg);
    g.n = n;
    g.k = k;
    g.u = n;
    g.method = Method::direct;
    return g;
}

GapValue r_direct(const DistributionSpec& d, int n, const QuadratureConfig& cfg) {
    validate(cfg);
    if (n < 1) throw DomainError("r_direct: requires n >= 1");
    GapValue g;
    if (n == 1 && !std::isfinite(d.bounds.lower)) {
        // E X_1 = integral_0^M (1-F) dx - integral_L^0 F dx.
        const double delta = cfg.tail_mass;
        double x_hi = d.quantile(1.0 - delta);
        double x_lo = std::min(d.quantile(delta), 0.0);
        auto upper = integrate_adaptive(
            [&](double x) { return std::exp(-d.log_survival(x)); }, 0.0, x_hi, cfg.rel_tol,
            cfg.abs_tol, cfg.max_subdivisions);
        auto lower = integrate_adaptive([&](double x) { return d.cdf(x); }, x_lo, 0.0,
                                        cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions);
        g.value = upper.value - lower.value;
        g.err_estimate = upper.err + lower.err + survival_tail_mass(d, x_hi, delta) +
                         delta * (std::fabs(x_lo) + 1.0);
    } else {
        g = integrate_occupancy(d, std::log(static_cast<double>(n)),
                                static_cast<double>(n - 1), 1.0, cfg);
    }
    g.n = n;
    g.k = std::max(0, n - 1);
    g.u = n;
    g.method = Method::direct;
    return g;
}

GapValue r_continuous(const DistributionSpec& d, double u, const QuadratureConfig& cfg) {
    validate(cfg);
    if (!(u >= 1.0) || !std::isfinite(u)) throw DomainError("r_continuous: requires u >= 1");
    GapValue g = integrate_occupancy(d, std::log(u), u - 1.0, 1.0, cfg);
    double rounded = std::round(u);
    g.n = std::fabs(u - rounded) < 1e-12 ? static_cast<int>(rounded) : 0;
    g.k = g.n > 0 ? g.n - 1 : 0;
    g.u = u;
    g.method = Method::continuous;
    return g;
}

// ---------------------------------------------------------------------------
// Stieltjes representation
// ---------------------------------------------------------------------------

namespace {

void ensure_ihr(const DistributionSpec& d) {
    if (d.known_ihr == IhrStatus::yes) return;
    if (d.known_ihr == IhrStatus::no)
        throw NotIhrError("d(-mu) is not a positive measure for " + d.name +
                          " (hazard rate is not increasing)");
    IhrVerdict v = check_ihr(d, 65, 1e-9);
    if (!v.is_ihr) {
        std::string msg = "d(-mu) is not a positive measure for " + d.name;
        if (v.witness)
            msg += " (midpoint convexity of phi fails between x=" +
                   std::to_string(v.witness->a) + " and x=" + std::to_string(v.witness->b) + ")";
        throw NotIhrError(msg);
    }
}

// mu' by central differences with one Richardson step; used when no analytic
// slope is available.
double numeric_mu_slope(const DistributionSpec& d, double x) {
    double h = 6.06e-6 * std::max(1.0, std::fabs(x));  // max(1e-6, cbrt(eps)) * scale
    if (std::isfinite(d.bounds.lower)) h = std::min(h, 0.5 * (x - d.bounds.lower));
    if (std::isfinite(d.bounds.upper)) h = std::min(h, 0.5 * (d.bounds.upper - x));
    if (!(h > 0)) return 0.0;
    auto central = [&](double step) {
        return (d.inverse_hazard(x + step) - d.inverse_hazard(x - step)) / (2.0 * step);
    };
    double d1 = central(h);
    double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

double pow_int(double base, int e) { return std::pow(base, static_cast<double>(e)); }

// Shared body of r_stieltjes (k = 0) and cm_witness (k >= 0):
// integral of F^n (1-F)^k d(-mu) over (L, M] including kink atoms and the
// boundary term at M.
GapValue stieltjes_integral(const DistributionSpec& d, int n, int k,
                            const QuadratureConfig& cfg) {
    validate(cfg);
    ensure_ihr(d);
    const double delta = cfg.tail_mass;
    const bool analytic_slope = static_cast<bool>(d.inverse_hazard_slope);

    const double x_lo = d.quantile(delta);
    const double x_hi = d.quantile(1.0 - delta);  // equals M when the atom holds > delta

    auto integrand = [&](double x) -> double {
        double phi = d.log_survival(x);
        if (!std::isfinite(phi)) {
            if (phi > 0) return 0.0;
            throw EvalError("log_survival returned a non-finite value");
        }
        double lf = log_cdf_from_phi(phi);
        if (!std::isfinite(lf)) return 0.0;
        double weight = std::exp(n * lf - k * phi);
        double slope = analytic_slope ? d.inverse_hazard_slope(x) : numeric_mu_slope(d, x);
        return weight * (-slope);
    };

    GapValue g;
    g.n = n;
    g.k = k;
    g.u = n;
    g.method = Method::stieltjes;

    auto knots = ladder_knots(d, x_lo, x_hi, delta);
    auto q = integrate_adaptive(integrand, x_lo, x_hi, cfg.rel_tol, cfg.abs_tol,
                                cfg.max_subdivisions, knots);
    double value = q.value;
    double err = q.err;
    if (!analytic_slope) err += 1e-9 * std::fabs(value) + 1e-13;

    // Kink atoms of d(-mu) strictly inside the window. Mass beyond x_hi is
    // covered by the boundary proxy below; mass below x_lo by the lower bound.
    for (const MuAtom& atom : d.interior_atoms) {
        if (atom.x <= x_lo || atom.x > x_hi) continue;
        double phi = d.log_survival(atom.x);
        double F = -std::expm1(-phi);
        value += pow_int(F, n) * std::exp(-k * phi) * atom.mass;
    }

    if (!std::isfinite(d.bounds.upper)) {
        // mu(M-) evaluated as mu(Q(1-delta)); with F^n(M-) = 1 this proxy also
        // absorbs the d(-mu) mass between x_hi and infinity.
        double mu_hi = d.inverse_hazard(x_hi);
        if (!std::isfinite(mu_hi) || mu_hi < 0)
            throw EvalError("inverse hazard not evaluable near the upper truncation point");
        if (k == 0) {
            value += mu_hi;
            err += n * delta * mu_hi;
        } else {
            err += std::exp(k * std::log(delta)) * mu_hi;
        }
    } else {
        double width = d.bounds.upper - d.bounds.lower;
        double mu_m = d.mu_at_upper_minus;
        if (!std::isfinite(mu_m))
            mu_m = d.inverse_hazard(d.bounds.upper - 1e-9 * width);
        double F_m = 1.0 - d.bounds.survival_at_upper;
        value += mu_m * pow_int(F_m, n) * pow_int(d.bounds.survival_at_upper, k);
        if (x_hi < d.bounds.upper) {
            double mu_hi = d.inverse_hazard(x_hi);
            if (std::isfinite(mu_hi)) err += std::max(0.0, mu_hi - mu_m);
        }
    }

    // d(-mu) mass below x_lo, weighted by F^n <= F^n(x_lo).
    if (std::isfinite(d.bounds.lower))
        err += n * std::pow(delta, n - 1) * std::max(0.0, x_lo - d.bounds.lower);
    else
        err += n * std::pow(delta, n - 1) * (std::fabs(x_lo) + 1.0);

    g.value = value;
    g.err_estimate = err;
    return g;
}

}  // namespace

GapValue r_stieltjes(const DistributionSpec& d, int n, const QuadratureConfig& cfg) {
    if (n < 2) throw DomainError("r_stieltjes: requires n >= 2");
    return stieltjes_integral(d, n, 0, cfg);
}

GapValue cm_witness(const DistributionSpec& d, int n, int k, const QuadratureConfig& cfg) {
    if (n < 2 || k < 0) throw DomainError("cm_witness: requires n >= 2 and k >= 0");
    GapValue g = stieltjes_integral(d, n, k, cfg);
    if (k > defaults::kCmWitnessDepthCap) {
        // (1-F)^k underflows the truncation window; keep the value but flag it.
        g.low_confidence = true;
        g.err_estimate = std::max(g.err_estimate, std::fabs(g.value));
    }
    return g;
}

GapSequence compute_sequence(const DistributionSpec& d, int n_min, int n_max, Method method,
                             const QuadratureConfig& cfg) {
    if (n_min < 1 || n_max < n_min)
        throw DomainError("compute_sequence: requires 1 <= n_min <= n_max");
    GapSequence s;
    s.n_min = n_min;
    s.source = method;
    s.values.reserve(n_max - n_min + 1);
    s.err_estimates.reserve(n_max - n_min + 1);
    for (int n = n_min; n <= n_max; ++n) {
        GapValue g;
        switch (method) {
            case Method::direct: g = r_direct(d, n, cfg); break;
            case Method::stieltjes: g = r_stieltjes(d, n, cfg); break;
            case Method::continuous: g = r_continuous(d, n, cfg); break;
            case Method::mc:
                throw DomainError("compute_sequence: use mc_gap for Monte Carlo sequences");
        }
        s.values.push_back(g.value);
        s.err_estimates.push_back(g.err_estimate);
    }
    return s;
}

}  // namespace ordgap
