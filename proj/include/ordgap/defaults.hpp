#pragma once

// Every tunable default in one place. CLI flags and per-call configs override
// these; the README carries the same table.

#include <cstdint>

namespace ordgap::defaults {

inline constexpr double kRelTol = 1e-10;          // quadrature relative tolerance
inline constexpr double kAbsTol = 1e-14;          // quadrature absolute tolerance
inline constexpr double kTailMass = 1e-12;        // truncated survival mass per unbounded end
inline constexpr int kMaxSubdivisions = 4000;     // quadrature panel budget
inline constexpr int kMaxOrder = 8;               // highest tested difference order
inline constexpr int kIhrGridSize = 129;          // quantile grid for the convexity check
inline constexpr double kIhrTolerance = 1e-9;     // relative midpoint-convexity tolerance
inline constexpr std::uint64_t kMcSamples = 100000;
inline constexpr std::uint64_t kMcSeed = 12345;
inline constexpr int kMcShards = 1;
inline constexpr int kCmWitnessDepthCap = 12;     // deeper witnesses are low-confidence

}  // namespace ordgap::defaults
