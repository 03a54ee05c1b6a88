#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "oip/bit_matrix.hpp"
#include "oip/oracle.hpp"
#include "oip/procedures.hpp"

namespace oip {

enum class Outcome { answered, exhausted, expired };

const char* to_string(Outcome o);

struct RunResult {
  Outcome outcome = Outcome::exhausted;
  std::uint32_t answer = 0;  // original row label, valid iff answered
  std::uint64_t cost_total = 0;
  std::uint64_t cost_sq = 0;
  std::uint64_t cost_gq = 0;
  std::uint64_t cost_mtgq = 0;
  std::map<std::string, std::uint64_t> phase_costs;
  std::uint32_t iters_main = 0;
  std::uint32_t iters_final = 0;
  std::uint32_t branch_found = 0;
  std::uint32_t branch_noone = 0;
  std::uint64_t budget_used = 0;
  std::uint64_t budget_cap = 0;
  std::uint64_t seed = 0;  // filled by the harness
};

// Tunables for the large-set algorithm. Defaults follow the cover-fraction
// and budget formulas with base-2 logs; every derived value is clamped into
// its valid range so small instances stay well-defined.
struct RoiplConfig {
  double threshold_exp = 10.0;  // stop the main loop once |S| <= N^t
  double sigma = 1.0;           // robust-search constant in the query budget
  std::optional<double> beta_override;
  std::optional<std::uint64_t> max_queries_override;

  // min(log2(M) * (log2 log2 M)^2 * log2(N) / (2N), 1/4); 1/4 when the
  // formula degenerates (M <= 2).
  double beta(std::uint32_t n, std::uint64_t m) const;
  // ceil(45 * sigma * sqrt(N log2 M log2 N) / log2(1/beta)), at least 1.
  std::uint64_t max_queries(std::uint32_t n, std::uint64_t m) const;

  static std::uint32_t level_main(std::uint64_t m);  // ~log2 log2 M
  static std::uint32_t level_mtgs(std::uint32_t n, std::uint64_t m);

  void validate() const;
};

// Identification for small candidate sets: alternate balanced-cover
// reductions with a full-range sweep when covering fails, until one
// candidate stands. Throws on an empty S; an S emptied mid-run by query
// errors yields `exhausted`.
RunResult roips(const CandidateSet& s, const OracleMatrix& z,
                HiddenOracle& oracle, const TraceSink* trace = nullptr);

// Identification for large candidate sets: budgeted main loop with the
// multi-target sweep as the fallback, then hand the relabeled survivors to
// roips. Hitting the query budget aborts with `expired`.
RunResult roipl(const OracleMatrix& z, HiddenOracle& oracle,
                const RoiplConfig& cfg = {}, const TraceSink* trace = nullptr);

// S-query-only halving baseline: repeatedly query the most balanced column
// of Z(S) (with majority repetition under noise) and filter.
RunResult classical_baseline(const OracleMatrix& z, HiddenOracle& oracle);

}  // namespace oip
