#pragma once

// Monte Carlo oracle: seeded, sharded simulation of order-statistic gaps via
// inverse-transform sampling from a counter-based stream. Results are bitwise
// reproducible for a fixed (seed, samples) regardless of the shard count.

#include <cstdint>

#include "ordgap/distribution.hpp"

namespace ordgap {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int shards = 1;
};

// Counter-based stream: a keyed hash of (seed, sample_index, coordinate).
std::uint64_t counter_rand_u64(std::uint64_t seed, std::uint64_t sample_index,
                               std::uint64_t coordinate);

// The same stream mapped into the open interval (0, 1).
double counter_rand_unit(std::uint64_t seed, std::uint64_t sample_index,
                         std::uint64_t coordinate);

// Mean and standard error of X_{k+1:n} - X_{k:n} over `samples` iid n-tuples.
// k in {1, n-1} uses a single-pass partial selection; other k sort per sample.
MCEstimate mc_gap(const DistributionSpec& dist, int n, int k, std::uint64_t samples,
                  std::uint64_t seed, int shards = 1);

// Mean and standard error of X_{n:n} - X_{1:n}. For n = 2 this reproduces
// mc_gap(n=2, k=1) bit for bit under the same seed.
MCEstimate mc_extreme_range(const DistributionSpec& dist, int n, std::uint64_t samples,
                            std::uint64_t seed, int shards = 1);

// Trapezoidal evaluation of the occupancy integral C(n,k) F^k (1-F)^{n-k} dx
// on a quantile grid. An arithmetic-independent cross-check of
// gap_expectation, intended for tests.
double survival_integral_check(const DistributionSpec& dist, int n, int k, int grid);

}  // namespace ordgap
