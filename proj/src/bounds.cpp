#include "oip/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oip {

BigInt hamming_ball_size(std::uint32_t n, std::uint32_t k) {
  if (k > n)
    throw std::invalid_argument("hamming_ball_size: k=" + std::to_string(k) +
                                " exceeds n=" + std::to_string(n));
  BigInt total = 1;  // C(n, 0)
  BigInt term = 1;
  for (std::uint32_t j = 1; j <= k; ++j) {
    term *= n - j + 1;
    term /= j;
    total += term;
  }
  return total;
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_bound(std::uint32_t n, std::uint32_t lam) {
  if (2ULL * lam > n)
    throw std::invalid_argument("entropy_bound: lam=" + std::to_string(lam) +
                                " exceeds n/2 with n=" + std::to_string(n));
  const double h = binary_entropy(static_cast<double>(lam) / n);
  return std::exp2(static_cast<double>(n) * h);
}

std::uint32_t ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("ceil_log2: zero argument");
  std::uint32_t lg = 0;
  std::uint64_t v = 1;
  while (v < x) {
    v <<= 1;
    ++lg;
  }
  return lg;
}

std::uint32_t log2_param(double x) {
  if (!(x > 1.0)) return 1;
  const double l = std::ceil(std::log2(x));
  return l < 1.0 ? 1U : static_cast<std::uint32_t>(l);
}

}  // namespace oip
