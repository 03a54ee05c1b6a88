#include "oip/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "oip/bounds.hpp"

namespace oip {

namespace {

void emit(const TraceSink* trace, const std::string& line) {
  if (trace && *trace) (*trace)(line);
}

std::vector<std::uint32_t> all_columns(std::uint32_t n) {
  std::vector<std::uint32_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0U);
  return cols;
}

std::vector<std::uint32_t> complement_columns(
    std::uint32_t n, const std::vector<std::uint32_t>& t_cols) {
  std::vector<bool> in_t(n, false);
  for (std::uint32_t c : t_cols) in_t[c] = true;
  std::vector<std::uint32_t> out;
  out.reserve(n - t_cols.size());
  for (std::uint32_t c = 0; c < n; ++c)
    if (!in_t[c]) out.push_back(c);
  return out;
}

void snapshot_costs(const CostLedger& ledger, RunResult& r) {
  r.cost_sq = ledger.sq_calls();
  r.cost_gq = ledger.gq_calls();
  r.cost_mtgq = ledger.mtgq_calls();
  r.cost_total = ledger.total();
  r.phase_costs = ledger.phase_costs();
  r.budget_used = ledger.budget_used();
  r.budget_cap = ledger.has_budget() ? ledger.budget_cap() : 0;
}

double roips_cover_fraction(std::uint32_t n) {
  const double lg = static_cast<double>(std::max(1U, ceil_log2(n)));
  return std::min(lg * lg * lg * lg / static_cast<double>(n), 0.25);
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::answered: return "answered";
    case Outcome::exhausted: return "exhausted";
    case Outcome::expired: return "expired";
  }
  return "?";
}

void RoiplConfig::validate() const {
  if (threshold_exp < 1.0)
    throw std::invalid_argument("RoiplConfig: threshold_exp must be >= 1");
  if (sigma <= 0.0)
    throw std::invalid_argument("RoiplConfig: sigma must be > 0");
  if (beta_override && (!(*beta_override > 0.0) || *beta_override > 0.25))
    throw std::invalid_argument("RoiplConfig: beta must be in (0, 1/4]");
  if (max_queries_override && *max_queries_override < 1)
    throw std::invalid_argument("RoiplConfig: max_queries must be >= 1");
}

double RoiplConfig::beta(std::uint32_t n, std::uint64_t m) const {
  if (beta_override) return *beta_override;
  const double log_m = std::log2(static_cast<double>(m));
  const double log_n = std::log2(static_cast<double>(n));
  if (!(log_m > 1.0) || !(log_n > 0.0)) return 0.25;
  const double loglog_m = std::log2(log_m);
  const double raw = log_m * loglog_m * loglog_m * log_n / (2.0 * n);
  if (!(raw > 0.0)) return 0.25;
  return std::min(raw, 0.25);
}

std::uint64_t RoiplConfig::max_queries(std::uint32_t n, std::uint64_t m) const {
  if (max_queries_override) return *max_queries_override;
  const double b = beta(n, m);
  const double log_m = std::log2(static_cast<double>(m));
  const double log_n = std::log2(static_cast<double>(n));
  const double raw =
      45.0 * sigma * std::sqrt(n * log_m * log_n) / std::log2(1.0 / b);
  if (!(raw >= 1.0)) return 1;
  return static_cast<std::uint64_t>(std::ceil(raw));
}

std::uint32_t RoiplConfig::level_main(std::uint64_t m) {
  return log2_param(std::log2(static_cast<double>(m)));
}

std::uint32_t RoiplConfig::level_mtgs(std::uint32_t n, std::uint64_t m) {
  const double log_m = std::log2(static_cast<double>(m));
  const double log_n = std::max(1.0, std::log2(static_cast<double>(n)));
  const double ratio = log_m / log_n;
  if (!(ratio > 1.0)) return 1;
  return log2_param(std::log2(ratio));
}

RunResult roips(const CandidateSet& s, const OracleMatrix& z,
                HiddenOracle& oracle, const TraceSink* trace) {
  if (s.empty()) throw std::invalid_argument("roips: empty candidate set");
  CostLedger& ledger = oracle.ledger();
  PhaseScope phase(ledger, "roips");

  const std::uint32_t n = z.cols();
  const double cover_r = roips_cover_fraction(n);
  const std::uint32_t reduce_l = std::max(1U, ceil_log2(n));
  const std::uint32_t stall_cap = 10 * std::max(1U, ceil_log2(z.rows()));

  RunResult result;
  CandidateSet current = s;
  std::uint32_t stalls = 0;
  while (current.size() > 1) {
    const std::uint32_t size_before = current.size();
    oracle.set_flip_mask(
        normalize_one_sensitive(z, current, oracle.flip_mask()));
    const FlipMask& mask = oracle.flip_mask();

    auto t_cols = row_cover(current, cover_r, z, mask);
    emit(trace, "proc=row_cover size=" + std::to_string(t_cols.size()) +
                    " charge=0");
    auto first = row_reduction(t_cols, reduce_l, z, current, oracle, trace);
    first.branch == ReductionBranch::found_one ? ++result.branch_found
                                               : ++result.branch_noone;
    if (4ULL * first.survivors.size() <= 3ULL * current.size()) {
      current = std::move(first.survivors);
    } else {
      auto rest = complement_columns(n, t_cols);
      auto second =
          row_reduction(rest, 1, z, first.survivors, oracle, trace);
      second.branch == ReductionBranch::found_one ? ++result.branch_found
                                                  : ++result.branch_noone;
      current = std::move(second.survivors);
    }
    ++result.iters_main;
    emit(trace, "algo=roips iter=" + std::to_string(result.iters_main) +
                    " size=" + std::to_string(current.size()));

    if (current.size() == size_before) {
      if (++stalls > stall_cap) {
        result.outcome = Outcome::exhausted;
        snapshot_costs(ledger, result);
        return result;
      }
    } else {
      stalls = 0;
    }
  }

  if (current.empty()) {
    result.outcome = Outcome::exhausted;
  } else {
    result.outcome = Outcome::answered;
    result.answer = z.label(current.members()[0]);
  }
  snapshot_costs(ledger, result);
  return result;
}

RunResult roipl(const OracleMatrix& z, HiddenOracle& oracle,
                const RoiplConfig& cfg, const TraceSink* trace) {
  cfg.validate();
  CostLedger& ledger = oracle.ledger();

  const std::uint32_t n = z.cols();
  const std::uint64_t m = z.rows();
  const double beta = cfg.beta(n, m);
  const std::uint64_t budget = cfg.max_queries(n, m);
  ledger.install_budget(budget);
  const double threshold =
      std::pow(static_cast<double>(n), cfg.threshold_exp);
  const std::uint32_t l_main = RoiplConfig::level_main(m);
  const std::uint32_t l_mtgs = RoiplConfig::level_mtgs(n, m);
  const std::uint32_t stall_cap = 10 * std::max(1U, ceil_log2(m));
  const auto full_range = all_columns(n);

  RunResult result;
  CandidateSet current = CandidateSet::full(z.rows());
  std::uint32_t stalls = 0;
  {
    PhaseScope phase(ledger, "roipl_main");
    while (static_cast<double>(current.size()) > threshold) {
      const std::uint32_t size_before = current.size();
      oracle.set_flip_mask(
          normalize_one_sensitive(z, current, oracle.flip_mask()));
      const FlipMask& mask = oracle.flip_mask();

      auto t_cols = row_cover(current, beta, z, mask);
      emit(trace, "proc=row_cover size=" + std::to_string(t_cols.size()) +
                      " charge=0");
      auto first = row_reduction(t_cols, l_main, z, current, oracle, trace);
      first.branch == ReductionBranch::found_one ? ++result.branch_found
                                                 : ++result.branch_noone;
      if (4ULL * first.survivors.size() <= 3ULL * current.size()) {
        current = std::move(first.survivors);
      } else {
        current = std::move(first.survivors);
        // assumed target fraction from the current (post-reduction) size
        double r = 0.25 * std::log2(std::max<double>(current.size(), 2.0)) /
                   (n * std::max(1.0, std::log2(static_cast<double>(n))));
        r = std::clamp(r, 1e-9, 1.0);
        PhaseScope mtgs_phase(ledger, "roipl_mtgs");
        auto second = row_reduction_expire_mtgs(full_range, l_mtgs, r, z,
                                                current, oracle, trace);
        if (second.branch == ReductionBranch::expired) {
          result.outcome = Outcome::expired;
          snapshot_costs(ledger, result);
          return result;
        }
        second.branch == ReductionBranch::found_one ? ++result.branch_found
                                                    : ++result.branch_noone;
        current = std::move(second.survivors);
      }
      ++result.iters_main;
      emit(trace, "algo=roipl iter=" + std::to_string(result.iters_main) +
                      " size=" + std::to_string(current.size()));

      if (current.empty()) {
        result.outcome = Outcome::exhausted;
        snapshot_costs(ledger, result);
        return result;
      }
      if (current.size() == size_before) {
        if (++stalls > stall_cap) {
          result.outcome = Outcome::exhausted;
          snapshot_costs(ledger, result);
          return result;
        }
      } else {
        stalls = 0;
      }
    }
  }

  // Relabel the survivors so the small-set algorithm reports answers in the
  // original row labels.
  OracleMatrix reduced = z.submatrix(current);
  RunResult finish;
  {
    PhaseScope phase(ledger, "roipl_final");
    finish = roips(CandidateSet::full(reduced.rows()), reduced, oracle, trace);
  }
  result.outcome = finish.outcome;
  result.answer = finish.answer;
  result.iters_final = finish.iters_main;
  result.branch_found += finish.branch_found;
  result.branch_noone += finish.branch_noone;
  snapshot_costs(ledger, result);
  return result;
}

RunResult classical_baseline(const OracleMatrix& z, HiddenOracle& oracle) {
  CostLedger& ledger = oracle.ledger();
  PhaseScope phase(ledger, "baseline");

  const std::uint32_t m = z.rows();
  // Majority repetition count under noise: Theta(log M), forced odd.
  std::uint32_t reps = 1;
  if (oracle.noise().kind != NoiseKind::noiseless)
    reps = (9 * std::max(1U, ceil_log2(m))) | 1U;

  RunResult result;
  CandidateSet current = CandidateSet::full(m);
  const FlipMask identity(z.cols());
  while (current.size() > 1) {
    auto counts = column_ones(z, current, identity);
    std::uint32_t best_col = 0;
    std::int64_t best_balance = -1;
    for (std::uint32_t c = 0; c < z.cols(); ++c) {
      if (counts[c] == 0 || counts[c] == current.size()) continue;
      const std::int64_t balance = std::llabs(
          2 * static_cast<std::int64_t>(counts[c]) -
          static_cast<std::int64_t>(current.size()));
      if (best_balance < 0 || balance < best_balance) {
        best_balance = balance;
        best_col = c;
      }
    }
    if (best_balance < 0) break;  // no distinguishing column left

    std::uint32_t ones = 0;
    for (std::uint32_t i = 0; i < reps; ++i) ones += oracle.sq(best_col);
    const bool bit = 2 * ones > reps;

    std::vector<std::uint32_t> keep;
    for (std::uint32_t i : current.members())
      if (z.bit(i, best_col) == bit) keep.push_back(i);
    current = CandidateSet::from_members(m, std::move(keep));
    ++result.iters_main;
    if (current.empty()) break;
  }

  if (current.size() == 1) {
    result.outcome = Outcome::answered;
    result.answer = z.label(current.members()[0]);
  } else {
    result.outcome = Outcome::exhausted;
  }
  snapshot_costs(ledger, result);
  return result;
}

}  // namespace oip
