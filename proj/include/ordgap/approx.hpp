#pragma once

// Quantile-hazard approximation R_n ~ 1/lambda(x_n) at the (n-1)/n quantile,
// and the oscillating-inverse-hazard family mu = base + cos(eps * log(1-F)).

#include "ordgap/distribution.hpp"
#include "ordgap/gaps.hpp"

namespace ordgap {

struct ApproxResult {
    int n = 0;
    double x_n = 0.0;               // the (n-1)/n quantile
    double inv_hazard_at_xn = 0.0;  // mu(x_n)
    double r_quadrature = 0.0;      // r_direct(n)
    double abs_gap = 0.0;
};

// When the atom at M swallows the (n-1)/n quantile (survival at M- exceeds
// 1/n), x_n is reported as M and the inverse hazard as mu(M-).
ApproxResult quantile_hazard_approx(const DistributionSpec& dist, int n,
                                    const QuadratureConfig& cfg = {});

// Distribution on (0, inf) whose inverse hazard satisfies
// 1/lambda(x) = base_level + cos(eps * log(1 - F(x))) identically.
// Built in phi-space: the separable relation x = base*phi + sin(eps*phi)/eps
// is inverted pointwise, so the defining identity is exact by construction.
DistributionSpec oscillating_hazard_dist(double eps, double base_level = 2.0);

}  // namespace ordgap
