#include "oip/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oip {

WilsonInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson95: zero trials");
  if (successes > trials)
    throw std::invalid_argument("wilson95: successes exceed trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_scaling: need at least 3 points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (auto [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("fit_scaling: coordinates must be positive");
    xs.push_back(std::log2(x));
    ys.push_back(std::log2(y));
  }
  const double xmin = *std::min_element(xs.begin(), xs.end());
  const double xmax = *std::max_element(xs.begin(), xs.end());
  if (xmax - xmin < 1e-12)
    throw std::invalid_argument("fit_scaling: degenerate x range");

  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.r2 = syy < 1e-15 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

CostSummary summarize_costs(std::span<const std::uint64_t> costs) {
  if (costs.empty()) return {};
  std::vector<std::uint64_t> sorted(costs.begin(), costs.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0;
  for (std::uint64_t c : sorted) sum += static_cast<double>(c);
  CostSummary s;
  s.mean = sum / static_cast<double>(sorted.size());
  const std::size_t n = sorted.size();
  s.median = (n % 2) ? static_cast<double>(sorted[n / 2])
                     : 0.5 * (static_cast<double>(sorted[n / 2 - 1]) +
                              static_cast<double>(sorted[n / 2]));
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = static_cast<double>(sorted[std::min(n - 1, rank == 0 ? 0 : rank - 1)]);
  return s;
}

}  // namespace oip
