#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "oip/bit_matrix.hpp"

namespace oip {

enum class Family { grover, random_dense, random_sparse, hamming_ball, from_file };

const char* to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct InstanceSpec {
  Family family = Family::grover;
  std::uint32_t n = 0;
  std::uint32_t m = 0;          // random families only
  double density = 0.5;         // random families only
  std::uint32_t weight = 0;     // hamming_ball radius
  std::uint64_t seed = 0;       // random families only
  std::string path;             // from_file only
};

inline constexpr std::uint32_t kDefaultRowCap = 1U << 20;

// The N singleton-support vectors: row i has its only 1 in column i.
OracleMatrix gen_grover(std::uint32_t n);

// All vectors of weight <= k, ordered by weight then by support position.
// Refuses (naming the exact size) when the ball exceeds row_cap.
OracleMatrix gen_hamming_ball(std::uint32_t n, std::uint32_t k,
                              std::uint32_t row_cap = kDefaultRowCap);

// M distinct iid-Bernoulli(density) rows, deterministic in seed. Rejection
// sampling on duplicates; gives up with a descriptive error once the retry
// bound is hit.
OracleMatrix gen_random(std::uint32_t m, std::uint32_t n, double density,
                        std::uint64_t seed);

struct BuiltInstance {
  OracleMatrix matrix;
  std::optional<std::uint32_t> pinned_hidden;
};

BuiltInstance build_instance(const InstanceSpec& spec);

}  // namespace oip
