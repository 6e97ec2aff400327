#pragma once

// Core gap computations: expected differences of consecutive order statistics
// by direct quadrature, by the Stieltjes representation against d(-mu), by the
// real-argument extension, and the complete-monotonicity witness integrals.

#include <vector>

#include "ordgap/distribution.hpp"
#include "ordgap/quadrature.hpp"

namespace ordgap {

enum class Method { direct, stieltjes, continuous, mc };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct GapValue {
    int n = 0;
    int k = 0;       // gap index; for R_n rows the convention k = n-1
    double u = 0.0;  // real argument; equals n for integer methods
    double value = 0.0;
    Method method = Method::direct;
    double err_estimate = 0.0;
    bool low_confidence = false;
};

// Computed values R_{n_min}, R_{n_min+1}, ... with matching error estimates.
struct GapSequence {
    int n_min = 2;
    std::vector<double> values;
    std::vector<double> err_estimates;
    Method source = Method::direct;
};

// log C(n, k) via lgamma; valid far beyond the double-overflow range of C.
double log_binomial(int n, int k);

// E(X_{k+1:n} - X_{k:n}) = C(n,k) * integral of F^k (1-F)^{n-k} dx.
GapValue gap_expectation(const DistributionSpec& dist, int n, int k,
                         const QuadratureConfig& cfg = {});

// R_n = n * integral of F^{n-1} (1-F) dx; n = 1 gives E X_1.
GapValue r_direct(const DistributionSpec& dist, int n, const QuadratureConfig& cfg = {});

// R_n via the Stieltjes representation: absolutely continuous part
// F^n * (-mu') plus kink atoms plus the boundary term mu(M-) F^n(M-).
// Requires a decreasing inverse hazard; throws NotIhrError otherwise.
GapValue r_stieltjes(const DistributionSpec& dist, int n, const QuadratureConfig& cfg = {});

// R(u) = u * integral of F^{u-1} (1-F) dx for real u >= 1; agrees with
// r_direct at integer u.
GapValue r_continuous(const DistributionSpec& dist, double u,
                      const QuadratureConfig& cfg = {});

// (-1)^k Delta^k R_n evaluated as the integral of F^n (1-F)^k against d(-mu)
// plus the matching boundary term. Nonnegative for IHR inputs.
GapValue cm_witness(const DistributionSpec& dist, int n, int k,
                    const QuadratureConfig& cfg = {});

// R_{n_min..n_max} with one method (direct, stieltjes or continuous).
GapSequence compute_sequence(const DistributionSpec& dist, int n_min, int n_max,
                             Method method, const QuadratureConfig& cfg = {});

}  // namespace ordgap
