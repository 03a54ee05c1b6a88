#pragma once

#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace oip {

using BigInt = boost::multiprecision::cpp_int;

/// Exact Hamming-ball size: sum_{j=0}^{k} C(n, j). Requires k <= n.
BigInt hamming_ball_size(std::uint32_t n, std::uint32_t k);

/// Binary entropy H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

/// Volume bound 2^(n * H(lam/n)). Valid for lam <= n/2; dominates
/// hamming_ball_size(n, lam) on that range.
double entropy_bound(std::uint32_t n, std::uint32_t lam);

/// Ceil of log2(x) for x >= 1; ceil_log2(1) = 0.
std::uint32_t ceil_log2(std::uint64_t x);

/// Parameter rule for log-derived repetition counts: ceil of log2, clamped
/// to >= 1 so small arguments stay meaningful.
std::uint32_t log2_param(double x);

}  // namespace oip
