#include "ordgap/approx.hpp"

#include <cmath>
#include <sstream>

namespace ordgap {

ApproxResult quantile_hazard_approx(const DistributionSpec& d, int n,
                                    const QuadratureConfig& cfg) {
    if (n < 2) throw DomainError("quantile_hazard_approx: requires n >= 2");
    ApproxResult out;
    out.n = n;
    const double p = 1.0 - 1.0 / n;
    out.x_n = d.quantile(p);
    if (std::isfinite(d.bounds.upper) && out.x_n >= d.bounds.upper) {
        // The atom at M swallows the (n-1)/n quantile; report mu(M-).
        out.x_n = d.bounds.upper;
        double mu = d.mu_at_upper_minus;
        if (!std::isfinite(mu))
            mu = d.inverse_hazard(d.bounds.upper -
                                  1e-9 * (d.bounds.upper - d.bounds.lower));
        out.inv_hazard_at_xn = mu;
    } else {
        out.inv_hazard_at_xn = d.inverse_hazard(out.x_n);
    }
    GapValue r = r_direct(d, n, cfg);
    out.r_quadrature = r.value;
    out.abs_gap = std::fabs(r.value - out.inv_hazard_at_xn);
    return out;
}

DistributionSpec oscillating_hazard_dist(double eps, double base_level) {
    if (!(eps > 0) || !std::isfinite(eps))
        throw DomainError("oscillating_hazard_dist: eps must be positive");
    if (!(base_level > 1) || !std::isfinite(base_level))
        throw DomainError("oscillating_hazard_dist: base_level must exceed 1");

    // mu = base + cos(eps*phi) and phi' = 1/mu integrate in closed form to
    // x(phi) = base*phi + sin(eps*phi)/eps, which is strictly increasing with
    // slope in [base-1, base+1]. phi(x) inverts it by a bracketed Newton step.
    const double b = base_level;
    const double e = eps;
    auto x_of_phi = [b, e](double phi) { return b * phi + std::sin(e * phi) / e; };
    auto phi_of_x = [b, e, x_of_phi](double x) -> double {
        if (x <= 0) return 0.0;
        double lo = x / (b + 1.0);
        double hi = x / (b - 1.0);
        double phi = x / b;
        for (int iter = 0; iter < 100; ++iter) {
            double fx = x_of_phi(phi) - x;
            if (std::fabs(fx) <= 1e-15 * std::max(1.0, x)) break;
            if (fx > 0)
                hi = phi;
            else
                lo = phi;
            double next = phi - fx / (b + std::cos(e * phi));
            phi = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
            if (hi - lo <= 4e-16 * std::max(1.0, hi)) break;
        }
        return phi;
    };

    DistributionSpec d;
    d.log_survival = phi_of_x;
    d.cdf = [phi_of_x](double x) { return -std::expm1(-phi_of_x(x)); };
    d.hazard = [b, e, phi_of_x](double x) { return 1.0 / (b + std::cos(e * phi_of_x(x))); };
    d.inverse_hazard = [b, e, phi_of_x](double x) { return b + std::cos(e * phi_of_x(x)); };
    d.inverse_hazard_slope = [b, e, phi_of_x](double x) {
        double phi = phi_of_x(x);
        return -e * std::sin(e * phi) / (b + std::cos(e * phi));
    };
    d.quantile = [x_of_phi](double p) { return x_of_phi(-std::log1p(-p)); };
    d.bounds = {0.0, kInf, 0.0};
    // mu oscillates forever, so the hazard rate is not monotone.
    d.known_ihr = IhrStatus::no;
    std::ostringstream name;
    name.precision(15);
    name << "oscexp:eps=" << eps << ",base=" << base_level;
    d.name = name.str();
    return d;
}

}  // namespace ordgap
