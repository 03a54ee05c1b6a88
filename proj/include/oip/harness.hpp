#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oip/algorithms.hpp"
#include "oip/generators.hpp"
#include "oip/oracle.hpp"
#include "oip/stats.hpp"

namespace oip {

enum class Algo { roips, roipl, baseline };

const char* to_string(Algo a);
std::optional<Algo> algo_from_string(const std::string& s);

// One fully reproducible grid point: instance family and size, noise,
// algorithm and its knobs, trial count, master seed.
struct PlanPoint {
  Algo algo = Algo::roips;
  InstanceSpec instance;
  NoiseModel noise;
  OracleParams oracle_params;
  RoiplConfig roipl_cfg;
  std::uint32_t trials = 1;
  std::uint64_t master_seed = 0;
  std::uint32_t threads = 1;
};

// One CSV row; column order is fixed (see csv_header()).
struct TrialRow {
  std::string algo;
  std::string family;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::optional<double> density;
  double noise_p = 1.0;
  double gq_success = 1.0;
  std::uint64_t seed = 0;
  std::uint32_t trial = 0;
  bool success = false;
  bool expired = false;
  std::uint64_t cost_total = 0;
  std::uint64_t cost_sq = 0;
  std::uint64_t cost_gq = 0;
  std::uint64_t cost_mtgq = 0;
  std::uint32_t iters_main = 0;
  std::uint32_t branch_found = 0;
  std::uint32_t branch_noone = 0;
  // not serialized; used by the budget-cap checks
  std::uint64_t budget_used = 0;
  std::uint64_t budget_cap = 0;
};

struct TrialStats {
  std::uint32_t trials = 0;
  std::uint32_t successes = 0;
  std::uint32_t expired = 0;
  double success_rate = 0.0;
  WilsonInterval wilson;
  CostSummary cost;
};

struct PointResult {
  PlanPoint point;
  std::vector<TrialRow> rows;
  TrialStats stats;
};

// Runs all trials of a plan point with per-trial derived seeds. Success
// means the returned label equals the ground-truth row. Deterministic in
// the master seed, independent of the thread count.
PointResult run_trials(const PlanPoint& point);

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<PointResult>& results);
std::string csv_string(const std::vector<PointResult>& results);

std::string summary_header();
std::string summary_line(const PointResult& result);

}  // namespace oip
