#include "oip/procedures.hpp"

#include <algorithm>
#include <stdexcept>

#include "oip/bounds.hpp"

namespace oip {

namespace {

std::uint32_t majority_level(std::uint32_t l, std::uint32_t n) {
  return std::max(1U, std::min(l, ceil_log2(n)));
}

void emit(const TraceSink* trace, const std::string& line) {
  if (trace && *trace) (*trace)(line);
}

}  // namespace

const char* to_string(ReductionBranch b) {
  switch (b) {
    case ReductionBranch::found_one: return "found_one";
    case ReductionBranch::no_one_in_t: return "no_one_in_t";
    case ReductionBranch::expired: return "expired";
  }
  return "?";
}

int majority(std::optional<std::uint32_t> k, std::uint32_t l,
             HiddenOracle& oracle) {
  if (l < 1) throw std::invalid_argument("majority: l must be >= 1");
  if (!k) return 0;
  const std::uint32_t samples = 60 * l;
  std::uint32_t ones = 0;
  for (std::uint32_t i = 0; i < samples; ++i) ones += oracle.sq(*k);
  return 2 * ones > samples ? 1 : 0;
}

ReductionOutcome row_reduction(std::span<const std::uint32_t> t_cols,
                               std::uint32_t l, const OracleMatrix& z,
                               const CandidateSet& s, HiddenOracle& oracle,
                               const TraceSink* trace) {
  if (l < 1) throw std::invalid_argument("row_reduction: l must be >= 1");
  const std::uint64_t before = oracle.ledger().total();
  const FlipMask& mask = oracle.flip_mask();
  ReductionOutcome out;
  if (!t_cols.empty()) {
    const std::uint32_t l_maj = majority_level(l, z.cols());
    for (std::uint32_t round = 0; round < l; ++round) {
      auto k = oracle.gq(t_cols);
      if (majority(k, l_maj, oracle) == 1) {
        const std::uint32_t col = *k;
        out.survivors = positive_rows(std::span(&col, 1), z, s, mask);
        out.branch = ReductionBranch::found_one;
        out.witness = col;
        out.charged = oracle.ledger().total() - before;
        emit(trace, "proc=row_reduction branch=found_one witness=" +
                        std::to_string(col) +
                        " survivors=" + std::to_string(out.survivors.size()) +
                        " charge=" + std::to_string(out.charged));
        return out;
      }
    }
  }
  out.survivors = s.minus(positive_rows(t_cols, z, s, mask));
  out.branch = ReductionBranch::no_one_in_t;
  out.charged = oracle.ledger().total() - before;
  emit(trace, "proc=row_reduction branch=no_one_in_t survivors=" +
                  std::to_string(out.survivors.size()) +
                  " charge=" + std::to_string(out.charged));
  return out;
}

std::vector<std::uint32_t> row_cover(const CandidateSet& s, double r,
                                     const OracleMatrix& z,
                                     const FlipMask& mask) {
  if (!(r > 0.0) || r >= 1.0)
    throw std::invalid_argument("row_cover: r must be in (0, 1)");
  if (s.empty()) throw std::invalid_argument("row_cover: empty candidate set");

  // Uncovered-row column counts; maintained incrementally as columns join T.
  auto counts = column_ones(z, s, mask);
  for (std::uint32_t c = 0; c < z.cols(); ++c)
    if (2ULL * counts[c] > s.size())
      throw std::invalid_argument(
          "row_cover: Z(S) is not one-sensitive (normalize first)");

  const double threshold = r * static_cast<double>(s.size());
  std::vector<std::uint32_t> t_cols;
  std::vector<std::uint64_t> uncovered(s.words().begin(), s.words().end());
  std::uint32_t covered = 0;

  while (4ULL * covered < s.size()) {
    std::optional<std::uint32_t> pick;
    for (std::uint32_t c = 0; c < z.cols(); ++c) {
      if (static_cast<double>(counts[c]) >= threshold) {
        pick = c;
        break;
      }
    }
    if (!pick) break;
    t_cols.push_back(*pick);

    // Remove the newly covered rows and update per-column counts.
    auto col = z.col_words(*pick);
    const bool flip = mask.test(*pick);
    std::vector<std::uint64_t> removed(uncovered.size());
    for (std::size_t w = 0; w < uncovered.size(); ++w) {
      const std::uint64_t cw = flip ? ~col[w] : col[w];
      removed[w] = uncovered[w] & cw;
      uncovered[w] &= ~cw;
    }
    auto removed_set = CandidateSet::from_bitmap(z.rows(), std::move(removed));
    covered += removed_set.size();
    auto delta = column_ones(z, removed_set, mask);
    for (std::uint32_t c = 0; c < z.cols(); ++c) counts[c] -= delta[c];
  }
  return t_cols;
}

ReductionOutcome row_reduction_expire_mtgs(
    std::span<const std::uint32_t> t_cols, std::uint32_t l, double r,
    const OracleMatrix& z, const CandidateSet& s, HiddenOracle& oracle,
    const TraceSink* trace) {
  if (l < 1)
    throw std::invalid_argument("row_reduction_expire_mtgs: l must be >= 1");
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument(
        "row_reduction_expire_mtgs: r must be in (0, 1]");
  CostLedger& ledger = oracle.ledger();
  if (!ledger.has_budget())
    throw std::invalid_argument(
        "row_reduction_expire_mtgs: no expiry budget installed");

  const std::uint64_t before = ledger.total();
  const FlipMask& mask = oracle.flip_mask();
  MeterScope meter(ledger);
  ReductionOutcome out;

  auto expire = [&](const char* where) {
    out.survivors = CandidateSet::from_members(z.rows(), {});
    out.branch = ReductionBranch::expired;
    out.charged = ledger.total() - before;
    emit(trace, std::string("proc=row_reduction_expire_mtgs branch=expired "
                            "at=") +
                    where + " charge=" + std::to_string(out.charged));
    return out;
  };

  if (!t_cols.empty()) {
    const std::uint32_t l_maj = majority_level(l, z.cols());
    for (std::uint32_t round = 0; round < l; ++round) {
      if (ledger.would_exceed_budget(oracle.upcoming_mtgq_cost(r)))
        return expire("gq");
      auto k = oracle.multi_target_gq(t_cols, r);
      if (k && ledger.would_exceed_budget(60ULL * l_maj))
        return expire("majority");
      if (majority(k, l_maj, oracle) == 1) {
        const std::uint32_t col = *k;
        out.survivors = positive_rows(std::span(&col, 1), z, s, mask);
        out.branch = ReductionBranch::found_one;
        out.witness = col;
        out.charged = ledger.total() - before;
        emit(trace,
             "proc=row_reduction_expire_mtgs branch=found_one witness=" +
                 std::to_string(col) +
                 " survivors=" + std::to_string(out.survivors.size()) +
                 " charge=" + std::to_string(out.charged));
        return out;
      }
    }
  }

  // Sparse fallback: keep the rows whose masked weight fits the assumed
  // target fraction.
  const double weight_cap = r * static_cast<double>(z.cols());
  std::vector<std::uint32_t> keep;
  for (std::uint32_t i : s.members())
    if (static_cast<double>(z.row_weight(i, mask)) <= weight_cap)
      keep.push_back(i);
  out.survivors = CandidateSet::from_members(z.rows(), std::move(keep));
  out.branch = ReductionBranch::no_one_in_t;
  out.charged = ledger.total() - before;
  emit(trace, "proc=row_reduction_expire_mtgs branch=no_one_in_t survivors=" +
                  std::to_string(out.survivors.size()) +
                  " charge=" + std::to_string(out.charged));
  return out;
}

}  // namespace oip
