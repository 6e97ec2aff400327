#pragma once

// Distribution model: evaluable CDF / survival / phi / hazard / inverse hazard
// / quantile, support bounds, the built-in zoo, hazard-defined constructors,
// and the numerical IHR (increasing-hazard-rate) check.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ordgap/defaults.hpp"
#include "ordgap/errors.hpp"

namespace ordgap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Support endpoints L < M and the survival mass remaining at M-.
// survival_at_upper is positive only when a finite M carries an atom.
struct SupportBounds {
    double lower = -kInf;
    double upper = kInf;
    double survival_at_upper = 0.0;
};

enum class IhrStatus { yes, no, unknown };

// A jump of -mu at an interior kink of phi (right derivative exceeds the
// left one). mass = mu(x-) - mu(x).
struct MuAtom {
    double x = 0.0;
    double mass = 0.0;
};

// Immutable evaluable model of one distribution. Every callback is pure, so a
// constructed spec is safe to share across threads.
struct DistributionSpec {
    std::function<double(double)> cdf;                   // F
    std::function<double(double)> log_survival;          // phi = -log(1 - F)
    std::function<double(double)> hazard;                // lambda on [L, M)
    std::function<double(double)> inverse_hazard;        // mu = 1 / lambda
    std::function<double(double)> inverse_hazard_slope;  // mu' when analytic, else empty
    std::function<double(double)> quantile;              // p in (0,1) -> x
    SupportBounds bounds;
    std::string name;  // normalized "name:key=value,..." identification

    // Closed-form knowledge carried by the constructors.
    IhrStatus known_ihr = IhrStatus::unknown;
    bool shifted_exponential = false;    // constant hazard on [L, inf)
    bool truncated_exponential = false;  // constant hazard on [L, M), M <= inf
    double mu_at_upper_minus = kNaN;     // mu(M-) when known analytically
    std::vector<MuAtom> interior_atoms;  // kink atoms of d(-mu), ascending x
};

// Pointwise evaluation record. Outside [L, M) the conventional values are
// reported and in_support is false.
struct ProbeResult {
    double F = 0.0;
    double survival = 1.0;
    double phi = 0.0;
    double hazard = kNaN;
    double inverse_hazard = kNaN;
    bool in_support = false;
};

ProbeResult probe(const DistributionSpec& dist, double x);

struct IhrWitness {
    double a = 0.0;
    double b = 0.0;
    double violation = 0.0;  // phi((a+b)/2) - (phi(a)+phi(b))/2
};

struct IhrVerdict {
    bool is_ihr = false;
    std::optional<IhrWitness> witness;
    int grid_size = 0;
    double tolerance = 0.0;
    double worst_violation = 0.0;  // relative units; positive means non-convex
};

// Midpoint-convexity test of phi on a quantile-spaced grid, over all index
// pairs at dyadic spacings. tol is relative to max(1, |phi|).
IhrVerdict check_ihr(const DistributionSpec& dist, int grid_size = defaults::kIhrGridSize,
                     double tol = defaults::kIhrTolerance);

// Distribution mini-language: `name:key=value,key=value,...`.
// Names: exp, truncexp, uniform, weibull, gompertz, oscexp, hazardfile.
DistributionSpec make_builtin(const std::string& spec_string);

// One short usage line per builtin name, for CLI listing.
const std::vector<std::string>& builtin_distributions();

// Distribution defined by a positive hazard function on (lower, upper).
// phi is accumulated by adaptive quadrature over an eagerly built checkpoint
// ladder; the quantile inverts phi by a bracketed Newton iteration.
DistributionSpec from_hazard(std::function<double(double)> hazard_fn, double lower,
                             double upper = kInf);

enum class HazardInterp { linear, step };

// Distribution defined by a tabulated hazard: strictly increasing xs, positive
// lambdas. The hazard is either interpolated linearly or treated as
// right-continuous step data; beyond the last breakpoint it stays constant.
// Step data puts a kink atom of d(-mu) at every interior breakpoint.
DistributionSpec from_hazard_table(std::vector<double> xs, std::vector<double> lambdas,
                                   HazardInterp interp = HazardInterp::linear);

// Two-column CSV `x,hazard` (an optional header line is skipped).
DistributionSpec load_hazard_csv(const std::string& path,
                                 HazardInterp interp = HazardInterp::linear);

// Support detection for a black-box cdf: bisection over an expanding bracket,
// declaring the endpoints where F crosses 1e-14 and 1 - 1e-14. A survival
// mass above 1e-12 just below the upper endpoint is reported as an atom.
SupportBounds detect_support(const std::function<double(double)>& cdf);

// Distribution assembled from a black-box cdf. phi uses the supplied
// log-survival when given, otherwise a log1p computation of -log(1-F); the
// hazard comes from central differences of phi and the quantile from a
// bracketed bisection on F. Interior jumps of F (atoms before the upper
// endpoint) are rejected on a 64-point quantile scan.
DistributionSpec from_cdf(std::function<double(double)> cdf,
                          std::function<double(double)> log_survival = nullptr);

}  // namespace ordgap
