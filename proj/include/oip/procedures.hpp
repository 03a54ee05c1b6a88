#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oip/bit_matrix.hpp"
#include "oip/oracle.hpp"

namespace oip {

using TraceSink = std::function<void(const std::string&)>;

enum class ReductionBranch { found_one, no_one_in_t, expired };

const char* to_string(ReductionBranch b);

struct ReductionOutcome {
  CandidateSet survivors;  // always a subset of the S passed in
  ReductionBranch branch = ReductionBranch::no_one_in_t;
  std::optional<std::uint32_t> witness;  // column index, found_one only
  std::uint64_t charged = 0;             // ledger delta of this call
};

// Majority of 60*l samples of f(k); nill costs nothing and reads as 0.
// Ties (impossible for an odd count, possible here since 60*l is even)
// break toward 0.
int majority(std::optional<std::uint32_t> k, std::uint32_t l,
             HiddenOracle& oracle);

// Up to l rounds of GQ(T) + majority filtering. Returns the rows sharing a
// confirmed 1-position, or — after l failures — the rows of S with no 1
// anywhere in T. Empty T short-circuits to the no-one branch at zero cost.
ReductionOutcome row_reduction(std::span<const std::uint32_t> t_cols,
                               std::uint32_t l, const OracleMatrix& z,
                               const CandidateSet& s, HiddenOracle& oracle,
                               const TraceSink* trace = nullptr);

// Greedy balanced column collection: add columns covering at least r*|S|
// yet-uncovered rows while total coverage stays below |S|/4. Ties break to
// the lowest column index. Requires Z(S) one-sensitive under mask.
// Guarantees |T| <= ceil(1/(4r)) + 1 and coverage < 3|S|/4.
std::vector<std::uint32_t> row_cover(const CandidateSet& s, double r,
                                     const OracleMatrix& z,
                                     const FlipMask& mask);

// row_reduction with MultiTargetGQ(T, r) in place of GQ, hard-capped by the
// ledger budget (checked before each charge; `expired` with no survivors
// once the next charge would cross the cap), and a sparse fallback: the
// l-failures branch keeps the rows of S whose masked weight is <= r*N.
ReductionOutcome row_reduction_expire_mtgs(
    std::span<const std::uint32_t> t_cols, std::uint32_t l, double r,
    const OracleMatrix& z, const CandidateSet& s, HiddenOracle& oracle,
    const TraceSink* trace = nullptr);

}  // namespace oip
