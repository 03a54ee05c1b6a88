#include "oip/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "oip/bounds.hpp"
#include "oip/instance_io.hpp"
#include "oip/rng.hpp"

namespace oip {

const char* to_string(Family f) {
  switch (f) {
    case Family::grover: return "grover";
    case Family::random_dense: return "random-dense";
    case Family::random_sparse: return "random-sparse";
    case Family::hamming_ball: return "hamming-ball";
    case Family::from_file: return "from-file";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
  if (s == "grover") return Family::grover;
  if (s == "random-dense" || s == "random") return Family::random_dense;
  if (s == "random-sparse") return Family::random_sparse;
  if (s == "hamming-ball") return Family::hamming_ball;
  if (s == "from-file" || s == "file") return Family::from_file;
  return std::nullopt;
}

OracleMatrix gen_grover(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("gen_grover: N must be >= 1");
  const std::size_t stride = words_for(n);
  std::vector<std::uint64_t> flat(static_cast<std::size_t>(n) * stride, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    flat[i * stride + (i >> 6)] = 1ULL << (i & 63);
  return OracleMatrix(n, n, std::move(flat));
}

OracleMatrix gen_hamming_ball(std::uint32_t n, std::uint32_t k,
                              std::uint32_t row_cap) {
  const BigInt size = hamming_ball_size(n, k);
  if (size > row_cap)
    throw std::invalid_argument(
        "gen_hamming_ball: ball of exactly " + size.str() +
        " rows exceeds the cap of " + std::to_string(row_cap));
  const std::uint32_t m = static_cast<std::uint32_t>(size);
  const std::size_t stride = words_for(n);
  std::vector<std::uint64_t> flat;
  flat.reserve(static_cast<std::size_t>(m) * stride);

  std::vector<std::uint64_t> row(stride, 0);
  flat.insert(flat.end(), row.begin(), row.end());  // weight 0
  for (std::uint32_t w = 1; w <= k; ++w) {
    // supports of size w in ascending combination order
    std::vector<std::uint32_t> support(w);
    for (std::uint32_t i = 0; i < w; ++i) support[i] = i;
    while (true) {
      std::fill(row.begin(), row.end(), 0);
      for (std::uint32_t c : support) row[c >> 6] |= 1ULL << (c & 63);
      flat.insert(flat.end(), row.begin(), row.end());
      // next combination
      std::int64_t i = static_cast<std::int64_t>(w) - 1;
      while (i >= 0 && support[static_cast<std::size_t>(i)] ==
                           n - w + static_cast<std::uint32_t>(i))
        --i;
      if (i < 0) break;
      ++support[static_cast<std::size_t>(i)];
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < w; ++j)
        support[j] = support[j - 1] + 1;
    }
  }
  return OracleMatrix(m, n, std::move(flat));
}

OracleMatrix gen_random(std::uint32_t m, std::uint32_t n, double density,
                        std::uint64_t seed) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("gen_random: M and N must be >= 1");
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("gen_random: density must be in [0, 1]");
  if ((density == 0.0 || density == 1.0) && m > 1)
    throw std::invalid_argument(
        "gen_random: degenerate density cannot yield " + std::to_string(m) +
        " distinct rows");
  if (n < 63 && m > (1ULL << n))
    throw std::invalid_argument("gen_random: M=" + std::to_string(m) +
                                " exceeds the 2^" + std::to_string(n) +
                                " distinct rows available");

  const std::size_t stride = words_for(n);
  const std::uint64_t max_attempts = 50ULL * m + 1000;
  Rng rng(seed);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> flat;
  flat.reserve(static_cast<std::size_t>(m) * stride);

  std::uint64_t attempts = 0;
  std::vector<std::uint64_t> row(stride);
  while (seen.size() < m) {
    if (++attempts > max_attempts)
      throw std::invalid_argument(
          "gen_random: could not draw " + std::to_string(m) +
          " distinct rows within " + std::to_string(max_attempts) +
          " attempts (density too extreme for this N)");
    std::fill(row.begin(), row.end(), 0);
    for (std::uint32_t c = 0; c < n; ++c)
      if (rng.bernoulli(density)) row[c >> 6] |= 1ULL << (c & 63);
    if (seen.insert(row).second)
      flat.insert(flat.end(), row.begin(), row.end());
  }
  return OracleMatrix(m, n, std::move(flat));
}

BuiltInstance build_instance(const InstanceSpec& spec) {
  switch (spec.family) {
    case Family::grover:
      return {gen_grover(spec.n), std::nullopt};
    case Family::random_dense:
    case Family::random_sparse:
      return {gen_random(spec.m, spec.n, spec.density, spec.seed),
              std::nullopt};
    case Family::hamming_ball:
      return {gen_hamming_ball(spec.n, spec.weight), std::nullopt};
    case Family::from_file: {
      Instance inst = read_instance_file(spec.path);
      return {std::move(inst.matrix), inst.hidden};
    }
  }
  throw std::invalid_argument("build_instance: unknown family");
}

}  // namespace oip
