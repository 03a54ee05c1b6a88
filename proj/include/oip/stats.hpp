#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace oip {

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval (z = 1.96) for successes out of trials.
WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

// Ordinary least squares on (log2 x, log2 y). Requires >= 3 points with
// positive coordinates and at least two distinct x values.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points);

struct CostSummary {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
};

CostSummary summarize_costs(std::span<const std::uint64_t> costs);

}  // namespace oip
