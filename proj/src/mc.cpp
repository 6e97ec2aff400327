#include "ordgap/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ordgap/gaps.hpp"

namespace ordgap {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// One-pass mean / M2 accumulator with a deterministic pairwise merge.
struct Accumulator {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d1 = x - mean;
        mean += d1 / static_cast<double>(n);
        m2 += d1 * (x - mean);
    }
    void merge(const Accumulator& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        std::uint64_t t = n + o.n;
        mean += d * (static_cast<double>(o.n) / static_cast<double>(t));
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n) /
                              static_cast<double>(t));
        n = t;
    }
    double std_error() const {
        if (n < 2) return 0.0;
        double var = m2 / static_cast<double>(n - 1);
        return std::sqrt(var / static_cast<double>(n));
    }
};

// Samples are processed in fixed blocks and the per-block accumulators are
// merged in block order, so the result is bitwise independent of how many
// shards (threads) ran the blocks.
constexpr std::uint64_t kBlockSize = 1u << 16;

template <class Statistic>
MCEstimate run_blocks(std::uint64_t samples, std::uint64_t seed, int shards,
                      const Statistic& statistic) {
    if (samples < 1) throw DomainError("mc: samples must be at least 1");
    if (shards < 1) throw DomainError("mc: shards must be at least 1");

    const std::uint64_t num_blocks = (samples + kBlockSize - 1) / kBlockSize;
    std::vector<Accumulator> per_block(num_blocks);

    auto run_block = [&](std::uint64_t b) {
        Accumulator acc;
        const std::uint64_t begin = b * kBlockSize;
        const std::uint64_t end = std::min(samples, begin + kBlockSize);
        for (std::uint64_t i = begin; i < end; ++i) acc.add(statistic(i));
        per_block[b] = acc;
    };

    unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(
        num_blocks, std::min<std::uint64_t>(static_cast<std::uint64_t>(shards),
                                            std::max(1u, std::thread::hardware_concurrency()))));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < num_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < num_blocks; b = next.fetch_add(1))
                    run_block(b);
            });
        }
        for (auto& t : pool) t.join();
    }

    Accumulator total;
    for (const auto& acc : per_block) total.merge(acc);

    MCEstimate est;
    est.mean = total.mean;
    est.std_error = total.std_error();
    est.samples = samples;
    est.seed = seed;
    est.shards = shards;
    return est;
}

}  // namespace

std::uint64_t counter_rand_u64(std::uint64_t seed, std::uint64_t sample_index,
                               std::uint64_t coordinate) {
    std::uint64_t s = mix64(seed ^ 0x9E3779B97F4A7C15ULL);
    std::uint64_t a = mix64(s ^ (sample_index * 0xBF58476D1CE4E5B9ULL + 0xD1B54A32D192ED03ULL));
    return mix64(a ^ (coordinate * 0x94D049BB133111EBULL + 0x2545F4914F6CDD1DULL));
}

double counter_rand_unit(std::uint64_t seed, std::uint64_t sample_index,
                         std::uint64_t coordinate) {
    std::uint64_t bits = counter_rand_u64(seed, sample_index, coordinate);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

MCEstimate mc_gap(const DistributionSpec& d, int n, int k, std::uint64_t samples,
                  std::uint64_t seed, int shards) {
    if (n < 2 || k < 1 || k > n - 1)
        throw DomainError("mc_gap: requires n >= 2 and 1 <= k <= n-1");

    if (k == n - 1) {
        auto top_two = [&, n](std::uint64_t i) {
            double max1 = -kInf, max2 = -kInf;
            for (int j = 0; j < n; ++j) {
                double x = d.quantile(counter_rand_unit(seed, i, static_cast<std::uint64_t>(j)));
                if (x > max1) {
                    max2 = max1;
                    max1 = x;
                } else if (x > max2) {
                    max2 = x;
                }
            }
            return max1 - max2;
        };
        return run_blocks(samples, seed, shards, top_two);
    }
    if (k == 1) {
        auto bottom_two = [&, n](std::uint64_t i) {
            double min1 = kInf, min2 = kInf;
            for (int j = 0; j < n; ++j) {
                double x = d.quantile(counter_rand_unit(seed, i, static_cast<std::uint64_t>(j)));
                if (x < min1) {
                    min2 = min1;
                    min1 = x;
                } else if (x < min2) {
                    min2 = x;
                }
            }
            return min2 - min1;
        };
        return run_blocks(samples, seed, shards, bottom_two);
    }
    auto interior = [&, n, k](std::uint64_t i) {
        thread_local std::vector<double> xs;
        xs.resize(n);
        for (int j = 0; j < n; ++j)
            xs[j] = d.quantile(counter_rand_unit(seed, i, static_cast<std::uint64_t>(j)));
        std::sort(xs.begin(), xs.end());
        return xs[k] - xs[k - 1];  // X_{k+1:n} - X_{k:n}
    };
    return run_blocks(samples, seed, shards, interior);
}

MCEstimate mc_extreme_range(const DistributionSpec& d, int n, std::uint64_t samples,
                            std::uint64_t seed, int shards) {
    if (n < 2) throw DomainError("mc_extreme_range: requires n >= 2");
    if (n == 2) return mc_gap(d, 2, 1, samples, seed, shards);
    auto range = [&, n](std::uint64_t i) {
        double lo = kInf, hi = -kInf;
        for (int j = 0; j < n; ++j) {
            double x = d.quantile(counter_rand_unit(seed, i, static_cast<std::uint64_t>(j)));
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return hi - lo;
    };
    return run_blocks(samples, seed, shards, range);
}

double survival_integral_check(const DistributionSpec& d, int n, int k, int grid) {
    if (n < 2 || k < 1 || k > n - 1)
        throw DomainError("survival_integral_check: requires n >= 2 and 1 <= k <= n-1");
    if (grid < 2) throw DomainError("survival_integral_check: grid must be at least 2");

    // Quantile nodes: mid-cell probabilities plus dyadic refinement into both
    // tails down to mass 1e-10.
    const double delta = 1e-10;
    std::vector<double> ps;
    ps.reserve(grid + 80);
    for (int i = 0; i < grid; ++i) ps.push_back((i + 0.5) / grid);
    for (double p = 0.25 / grid; p >= delta; p *= 0.5) {
        ps.push_back(p);
        ps.push_back(1.0 - p);
    }
    ps.push_back(delta);
    ps.push_back(1.0 - delta);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    const double lc = log_binomial(n, k);
    std::vector<double> xs, gs;
    xs.reserve(ps.size());
    gs.reserve(ps.size());
    for (double p : ps) {
        double x = d.quantile(p);
        if (!xs.empty() && !(x > xs.back())) continue;
        double phi = d.log_survival(x);
        double g = 0.0;
        if (std::isfinite(phi) && phi > 0) {
            double lf = std::log(-std::expm1(-phi));
            if (std::isfinite(lf)) g = std::exp(lc + k * lf - (n - k) * phi);
        }
        xs.push_back(x);
        gs.push_back(g);
    }

    long double sum = 0.0L;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        sum += 0.5L * (xs[i + 1] - xs[i]) * (gs[i] + gs[i + 1]);
    return static_cast<double>(sum);
}

}  // namespace ordgap
