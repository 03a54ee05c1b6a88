#include "oip/harness.hpp"

#include <atomic>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oip/rng.hpp"

namespace oip {

const char* to_string(Algo a) {
  switch (a) {
    case Algo::roips: return "roips";
    case Algo::roipl: return "roipl";
    case Algo::baseline: return "baseline";
  }
  return "?";
}

std::optional<Algo> algo_from_string(const std::string& s) {
  if (s == "roips") return Algo::roips;
  if (s == "roipl") return Algo::roipl;
  if (s == "baseline") return Algo::baseline;
  return std::nullopt;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

TrialRow run_one_trial(const PlanPoint& point, const OracleMatrix& z,
                       std::optional<std::uint32_t> pinned_hidden,
                       std::uint32_t trial) {
  const std::uint64_t trial_seed = derive_seed(point.master_seed, trial + 1);
  // hidden-row draw and algorithm randomness come from separate streams
  std::uint32_t hidden;
  if (pinned_hidden) {
    hidden = *pinned_hidden;
  } else {
    Rng pick(derive_seed(trial_seed, 0));
    hidden = static_cast<std::uint32_t>(pick.below(z.rows()));
  }

  CostLedger ledger;
  HiddenOracle oracle = HiddenOracle::from_row(
      z, hidden, point.noise, point.oracle_params, derive_seed(trial_seed, 1),
      ledger);

  RunResult rr;
  switch (point.algo) {
    case Algo::roips:
      rr = roips(CandidateSet::full(z.rows()), z, oracle);
      break;
    case Algo::roipl:
      rr = roipl(z, oracle, point.roipl_cfg);
      break;
    case Algo::baseline:
      rr = classical_baseline(z, oracle);
      break;
  }

  TrialRow row;
  row.algo = to_string(point.algo);
  row.family = to_string(point.instance.family);
  row.n = z.cols();
  row.m = z.rows();
  if (point.instance.family == Family::random_dense ||
      point.instance.family == Family::random_sparse)
    row.density = point.instance.density;
  row.noise_p = point.noise.kind == NoiseKind::noiseless ? 1.0 : point.noise.p;
  row.gq_success =
      point.noise.kind == NoiseKind::noiseless ? 1.0 : point.noise.gq_success;
  row.seed = trial_seed;
  row.trial = trial;
  row.success =
      rr.outcome == Outcome::answered && rr.answer == z.label(hidden);
  row.expired = rr.outcome == Outcome::expired;
  row.cost_total = rr.cost_total;
  row.cost_sq = rr.cost_sq;
  row.cost_gq = rr.cost_gq;
  row.cost_mtgq = rr.cost_mtgq;
  row.iters_main = rr.iters_main;
  row.branch_found = rr.branch_found;
  row.branch_noone = rr.branch_noone;
  row.budget_used = rr.budget_used;
  row.budget_cap = rr.budget_cap;
  return row;
}

}  // namespace

PointResult run_trials(const PlanPoint& point) {
  if (point.trials < 1)
    throw std::invalid_argument("run_trials: trials must be >= 1");

  InstanceSpec spec = point.instance;
  if (spec.family == Family::random_dense ||
      spec.family == Family::random_sparse)
    spec.seed = derive_seed(point.master_seed, 0);
  BuiltInstance built = build_instance(spec);
  const OracleMatrix& z = built.matrix;

  PointResult result;
  result.point = point;
  result.rows.resize(point.trials);

  const std::uint32_t workers =
      std::max(1U, std::min(point.threads, point.trials));
  if (workers == 1) {
    for (std::uint32_t t = 0; t < point.trials; ++t)
      result.rows[t] = run_one_trial(point, z, built.pinned_hidden, t);
  } else {
    // trials are independent; rows land at their own index so the output
    // order never depends on scheduling
    std::vector<std::thread> pool;
    std::atomic<std::uint32_t> next{0};
    for (std::uint32_t w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (std::uint32_t t = next.fetch_add(1); t < point.trials;
             t = next.fetch_add(1))
          result.rows[t] = run_one_trial(point, z, built.pinned_hidden, t);
      });
    }
    for (auto& th : pool) th.join();
  }

  TrialStats& st = result.stats;
  st.trials = point.trials;
  std::vector<std::uint64_t> costs;
  costs.reserve(point.trials);
  for (const TrialRow& row : result.rows) {
    st.successes += row.success ? 1 : 0;
    st.expired += row.expired ? 1 : 0;
    costs.push_back(row.cost_total);
  }
  st.success_rate =
      static_cast<double>(st.successes) / static_cast<double>(st.trials);
  st.wilson = wilson95(st.successes, st.trials);
  st.cost = summarize_costs(costs);
  return result;
}

std::string csv_header() {
  return "algo,family,N,M,density,noise_p,gq_success,seed,trial,success,"
         "expired,cost_total,cost_sq,cost_gq,cost_mtgq,iters_main,"
         "branch_found,branch_noone";
}

void write_csv(std::ostream& out, const std::vector<PointResult>& results) {
  out << csv_header() << '\n';
  for (const PointResult& pr : results) {
    for (const TrialRow& r : pr.rows) {
      out << r.algo << ',' << r.family << ',' << r.n << ',' << r.m << ',';
      if (r.density) out << format_double(*r.density);
      out << ',' << format_double(r.noise_p) << ','
          << format_double(r.gq_success) << ',' << r.seed << ',' << r.trial
          << ',' << (r.success ? 1 : 0) << ',' << (r.expired ? 1 : 0) << ','
          << r.cost_total << ',' << r.cost_sq << ',' << r.cost_gq << ','
          << r.cost_mtgq << ',' << r.iters_main << ',' << r.branch_found
          << ',' << r.branch_noone << '\n';
    }
  }
}

std::string csv_string(const std::vector<PointResult>& results) {
  std::ostringstream out;
  write_csv(out, results);
  return out.str();
}

std::string summary_header() {
  return "algo family N M trials success_rate wilson_lo wilson_hi cost_mean "
         "cost_median cost_p95 expiry_rate";
}

std::string summary_line(const PointResult& pr) {
  std::ostringstream out;
  const TrialStats& st = pr.stats;
  out << to_string(pr.point.algo) << ' ' << to_string(pr.point.instance.family)
      << ' ' << pr.rows.front().n << ' ' << pr.rows.front().m << ' '
      << st.trials << ' ' << format_double(st.success_rate) << ' '
      << format_double(st.wilson.lo) << ' ' << format_double(st.wilson.hi)
      << ' ' << format_double(st.cost.mean) << ' '
      << format_double(st.cost.median) << ' ' << format_double(st.cost.p95)
      << ' '
      << format_double(static_cast<double>(st.expired) /
                       static_cast<double>(st.trials));
  return out.str();
}

}  // namespace oip
