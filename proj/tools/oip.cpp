// Command-line front end: instance generation, single-point solving,
// benchmark grids, and the invariant self-check suite. All indices in files
// and output are 0-based.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "oip/algorithms.hpp"
#include "oip/bounds.hpp"
#include "oip/generators.hpp"
#include "oip/harness.hpp"
#include "oip/instance_io.hpp"
#include "oip/rng.hpp"

namespace {

struct NoiseFlags {
  double noise_p = 1.0;
  double gq_success = 1.0;
  std::string failure_mode = "random-index";
  bool worst_case = false;
};

struct SolveFlags {
  std::string algo = "roips";
  std::string family = "grover";
  std::uint32_t n = 16;
  std::uint32_t m = 0;
  double density = 0.5;
  std::uint32_t weight = 0;
  std::string file;
  std::uint64_t seed = 0;
  std::uint32_t trials = 1;
  std::uint32_t threads = 1;
  NoiseFlags noise;
  double grover_const = 1.0;
  double sigma = 1.0;
  double threshold_exp = 10.0;
  std::optional<double> beta;
  std::optional<std::uint64_t> max_queries;
  std::string csv;
  std::string summary_csv;
  bool trace = false;
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& f) {
  cmd->add_option("--noise-p", f.noise_p,
                  "S-query correctness probability (1 = noiseless)")
      ->check(CLI::Range(2.0 / 3.0, 1.0));
  cmd->add_option("--gq-success", f.gq_success,
                  "G-query success probability (1 = noiseless)")
      ->check(CLI::Range(2.0 / 3.0, 1.0));
  cmd->add_option("--gq-failure", f.failure_mode,
                  "failed G-query output: nill or random-index")
      ->check(CLI::IsMember({"nill", "random-index"}));
  cmd->add_flag("--worst-case", f.worst_case,
                "pin every stochastic subroutine to the 2/3 floor");
}

void add_run_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--algo", f.algo, "roips|roipl|baseline")
      ->check(CLI::IsMember({"roips", "roipl", "baseline"}));
  cmd->add_option("--density", f.density, "Bernoulli density (random families)");
  cmd->add_option("--weight", f.weight, "ball radius (hamming-ball)");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "trials per grid point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", f.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  add_noise_flags(cmd, f.noise);
  cmd->add_option("--grover-const", f.grover_const, "G-query cost constant");
  cmd->add_option("--sigma", f.sigma, "query-budget constant");
  cmd->add_option("--threshold-exp", f.threshold_exp, "roipl handoff exponent");
  cmd->add_option("--beta", f.beta, "override the roipl cover fraction");
  cmd->add_option("--max-queries", f.max_queries, "override the roipl budget");
  cmd->add_option("--csv", f.csv, "write per-trial CSV here (default stdout)");
  cmd->add_option("--summary-csv", f.summary_csv, "write per-point summary CSV");
}

oip::NoiseModel make_noise(const NoiseFlags& f) {
  const auto mode = f.failure_mode == "nill" ? oip::GqFailureMode::nill
                                             : oip::GqFailureMode::random_index;
  if (f.worst_case) {
    oip::NoiseModel m = oip::NoiseModel::worst_case();
    m.failure_mode = mode;
    return m;
  }
  if (f.noise_p >= 1.0 && f.gq_success >= 1.0) {
    oip::NoiseModel m = oip::NoiseModel::noiseless();
    m.failure_mode = mode;
    return m;
  }
  return oip::NoiseModel::iid(f.noise_p, f.gq_success, mode);
}

oip::InstanceSpec make_spec(const SolveFlags& f, std::uint32_t n,
                            std::uint32_t m) {
  oip::InstanceSpec spec;
  if (!f.file.empty()) {
    spec.family = oip::Family::from_file;
    spec.path = f.file;
    return spec;
  }
  auto fam = oip::family_from_string(f.family);
  if (!fam)
    throw CLI::ValidationError("--family", "unknown family " + f.family);
  spec.family = *fam;
  spec.n = n;
  spec.m = m;
  spec.density = f.density;
  spec.weight = f.weight;
  return spec;
}

oip::PlanPoint make_point(const SolveFlags& f, std::uint32_t n,
                          std::uint32_t m) {
  oip::PlanPoint point;
  point.algo = *oip::algo_from_string(f.algo);
  point.instance = make_spec(f, n, m);
  point.noise = make_noise(f.noise);
  point.oracle_params.grover_const = f.grover_const;
  point.roipl_cfg.sigma = f.sigma;
  point.roipl_cfg.threshold_exp = f.threshold_exp;
  point.roipl_cfg.beta_override = f.beta;
  point.roipl_cfg.max_queries_override = f.max_queries;
  point.trials = f.trials;
  point.master_seed =
      oip::derive_seed(f.seed, (static_cast<std::uint64_t>(n) << 32) ^ m);
  point.threads = f.threads;
  return point;
}

int emit_results(const SolveFlags& f,
                 const std::vector<oip::PointResult>& results) {
  if (!f.csv.empty()) {
    std::ofstream out(f.csv);
    if (!out) {
      std::cerr << "error: cannot open " << f.csv << " for writing\n";
      return 1;
    }
    oip::write_csv(out, results);
  } else {
    oip::write_csv(std::cout, results);
  }
  if (!f.summary_csv.empty()) {
    std::ofstream out(f.summary_csv);
    if (!out) {
      std::cerr << "error: cannot open " << f.summary_csv << " for writing\n";
      return 1;
    }
    out << "algo,family,N,M,trials,success_rate,wilson_lo,wilson_hi,"
           "cost_mean,cost_median,cost_p95,expiry_rate\n";
    for (const auto& pr : results) {
      std::string line = oip::summary_line(pr);
      std::replace(line.begin(), line.end(), ' ', ',');
      out << line << '\n';
    }
  }
  for (const auto& pr : results) std::cerr << oip::summary_line(pr) << '\n';
  return 0;
}

// Runs trial 0 again with a trace sink attached; the batch itself stays
// untraced so CSV output is unaffected.
void trace_first_trial(const oip::PlanPoint& point) {
  oip::TraceSink sink = [](const std::string& line) {
    std::cerr << "trace: " << line << '\n';
  };
  oip::InstanceSpec spec = point.instance;
  if (spec.family == oip::Family::random_dense ||
      spec.family == oip::Family::random_sparse)
    spec.seed = oip::derive_seed(point.master_seed, 0);
  oip::BuiltInstance built = oip::build_instance(spec);
  const std::uint64_t trial_seed = oip::derive_seed(point.master_seed, 1);
  std::uint32_t hidden;
  if (built.pinned_hidden) {
    hidden = *built.pinned_hidden;
  } else {
    oip::Rng pick(oip::derive_seed(trial_seed, 0));
    hidden = static_cast<std::uint32_t>(pick.below(built.matrix.rows()));
  }
  oip::CostLedger ledger;
  oip::HiddenOracle oracle = oip::HiddenOracle::from_row(
      built.matrix, hidden, point.noise, point.oracle_params,
      oip::derive_seed(trial_seed, 1), ledger);
  switch (point.algo) {
    case oip::Algo::roips:
      oip::roips(oip::CandidateSet::full(built.matrix.rows()), built.matrix,
                 oracle, &sink);
      break;
    case oip::Algo::roipl:
      oip::roipl(built.matrix, oracle, point.roipl_cfg, &sink);
      break;
    case oip::Algo::baseline:
      oip::classical_baseline(built.matrix, oracle);
      break;
  }
  for (const auto& [phase, cost] : ledger.phase_costs())
    std::cerr << "trace: phase=" << phase << " charge=" << cost << '\n';
}

bool check(bool ok, const std::string& name, int& failures) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
  if (!ok) ++failures;
  return ok;
}

int run_verify() {
  using namespace oip;
  int failures = 0;
  Rng rng(0xC0FFEE);

  auto random_small = [&rng](std::uint32_t& m, std::uint32_t& n) {
    n = 1 + static_cast<std::uint32_t>(rng.below(12));
    const std::uint32_t max_m =
        n >= 4 ? 12U : static_cast<std::uint32_t>(1U << n);
    m = 2 + static_cast<std::uint32_t>(rng.below(max_m - 1));
  };

  {
    bool ok = true;
    for (int iter = 0; iter < 1000 && ok; ++iter) {
      std::uint32_t m, n;
      random_small(m, n);
      OracleMatrix z = gen_random(m, n, 0.5, rng.next());
      FlipMask mask(n);
      for (std::uint32_t c = 0; c < n; ++c)
        if (rng.bernoulli(0.3)) mask.toggle(c);
      std::vector<std::uint32_t> members;
      for (std::uint32_t i = 0; i < m; ++i)
        if (rng.bernoulli(0.7)) members.push_back(i);
      auto s = CandidateSet::from_members(m, members);
      std::vector<std::uint32_t> t_cols;
      for (std::uint32_t c = 0; c < n; ++c)
        if (rng.bernoulli(0.4)) t_cols.push_back(c);
      auto got = positive_rows(t_cols, z, s, mask);
      std::vector<std::uint32_t> want;
      for (std::uint32_t i : s.members()) {
        bool hit = false;
        for (std::uint32_t c : t_cols) hit = hit || z.bit(i, c, mask);
        if (hit) want.push_back(i);
      }
      auto gm = got.members();
      ok = std::equal(want.begin(), want.end(), gm.begin(), gm.end());
    }
    check(ok, "positive_rows matches brute force", failures);
  }

  {
    bool ok = true;
    for (int iter = 0; iter < 300 && ok; ++iter) {
      const std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.below(9));
      const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(30));
      OracleMatrix z = gen_random(m, n, 0.5, rng.next());
      auto s = CandidateSet::full(m);
      auto mask = normalize_one_sensitive(z, s, FlipMask(n));
      ok = is_one_sensitive(z, s, mask) &&
           normalize_one_sensitive(z, s, mask) == mask;
    }
    check(ok, "normalize_one_sensitive postcondition + idempotence", failures);
  }

  {
    bool ok = true;
    for (int iter = 0; iter < 300 && ok; ++iter) {
      const std::uint32_t n = 8 + static_cast<std::uint32_t>(rng.below(9));
      const std::uint32_t m = 4 + static_cast<std::uint32_t>(rng.below(60));
      OracleMatrix z = gen_random(m, n, 0.3 + 0.4 * rng.unit(), rng.next());
      auto s = CandidateSet::full(m);
      auto mask = normalize_one_sensitive(z, s, FlipMask(n));
      const double r = 0.02 + 0.3 * rng.unit();
      auto t_cols = row_cover(s, r, z, mask);
      const std::uint64_t cap =
          static_cast<std::uint64_t>(std::ceil(1.0 / (4.0 * r))) + 1;
      auto covered = positive_rows(t_cols, z, s, mask);
      ok = t_cols.size() <= cap && 4ULL * covered.size() < 3ULL * s.size();
    }
    check(ok, "row_cover postconditions", failures);
  }

  {
    bool ok = true;
    std::vector<OracleMatrix> zs;
    zs.push_back(gen_grover(8));
    zs.push_back(gen_random(32, 8, 0.5, 11));
    zs.push_back(gen_hamming_ball(6, 2));
    for (const auto& z : zs) {
      for (std::uint32_t hidden = 0; hidden < z.rows() && ok; ++hidden) {
        CostLedger ledger;
        HiddenOracle oracle = HiddenOracle::from_row(
            z, hidden, NoiseModel::noiseless(), {}, rng.next(), ledger);
        auto rr = roips(CandidateSet::full(z.rows()), z, oracle);
        ok = rr.outcome == Outcome::answered && rr.answer == hidden;
      }
    }
    check(ok, "noiseless identification is exact (all hidden rows)", failures);
  }

  {
    bool ok = true;
    for (int iter = 0; iter < 20 && ok; ++iter) {
      OracleMatrix z = gen_random(64, 16, 0.5, rng.next());
      CostLedger ledger;
      QueryLog log;
      HiddenOracle oracle = HiddenOracle::from_row(
          z, static_cast<std::uint32_t>(rng.below(64)),
          NoiseModel::worst_case(), {}, rng.next(), ledger);
      oracle.attach_log(&log);
      roips(CandidateSet::full(z.rows()), z, oracle);
      std::uint64_t sq = 0, gq = 0, mtgq = 0;
      for (const auto& ev : log) {
        switch (ev.kind) {
          case QueryKind::sq:
            ok = ok && ev.charge == 1;
            sq += ev.charge;
            break;
          case QueryKind::gq:
            ok = ok && ev.charge == HiddenOracle::gq_cost(ev.t_size, ev.k1, 1.0);
            gq += ev.charge;
            break;
          case QueryKind::mtgq:
            mtgq += ev.charge;
            break;
        }
      }
      ok = ok && sq == ledger.sq_calls() && gq == ledger.gq_calls() &&
           mtgq == ledger.mtgq_calls();
    }
    check(ok, "query-charge replay equals ledger", failures);
  }

  {
    bool ok = true;
    for (std::uint32_t n = 1; n <= 30 && ok; ++n)
      for (std::uint32_t lam = 0; 2 * lam <= n && ok; ++lam)
        ok = static_cast<double>(hamming_ball_size(n, lam)) <=
             entropy_bound(n, lam) * (1 + 1e-12);
    check(ok, "hamming_ball_size <= entropy_bound (N <= 30)", failures);
  }

  std::cout << (failures == 0 ? "verify: all checks passed"
                              : "verify: FAILURES above")
            << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust oracle-identification simulator"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string gen_family = "grover", gen_out;
  std::uint32_t gen_n = 16, gen_m = 0, gen_weight = 0;
  double gen_density = 0.5;
  std::uint64_t gen_seed = 0;
  std::optional<std::uint32_t> gen_hidden;
  gen->add_option("--family", gen_family,
                  "grover|random-dense|random-sparse|hamming-ball")
      ->check(CLI::IsMember(
          {"grover", "random-dense", "random-sparse", "hamming-ball"}));
  gen->add_option("--n", gen_n, "columns (oracle length)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "rows (random families)");
  gen->add_option("--density", gen_density, "Bernoulli density");
  gen->add_option("--weight", gen_weight, "ball radius (hamming-ball)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--hidden", gen_hidden, "pin the hidden row index");
  gen->add_option("--out", gen_out, "output path (default <family>_<n>.oip)");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "run one instance configuration");
  solve->add_option("--family", sf.family, "instance family");
  solve->add_option("--file", sf.file, "read the instance from a file");
  solve->add_option("--n", sf.n, "columns");
  solve->add_option("--m", sf.m, "rows (default n^2 for random families)");
  add_run_flags(solve, sf);
  solve->add_flag("--trace", sf.trace, "emit procedure trace lines on stderr");

  SolveFlags bf;
  std::vector<std::uint32_t> bench_n{64};
  std::vector<std::uint32_t> bench_m;
  std::string bench_fit = "none";
  auto* bench = app.add_subcommand("bench", "run a grid of configurations");
  bench->add_option("--family", bf.family, "instance family");
  bench->add_option("--n", bench_n, "columns (repeatable)");
  bench->add_option("--m", bench_m, "rows (repeatable; default n^2)");
  add_run_flags(bench, bf);
  bench->add_option("--fit", bench_fit,
                    "scaling fit across points: none|n|loglogm")
      ->check(CLI::IsMember({"none", "n", "loglogm"}));

  auto* verify = app.add_subcommand("verify", "run the invariant self-checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      SolveFlags g;
      g.family = gen_family;
      g.density = gen_density;
      g.weight = gen_weight;
      oip::InstanceSpec spec =
          make_spec(g, gen_n, gen_m ? gen_m : gen_n * gen_n);
      spec.seed = gen_seed;
      oip::BuiltInstance built = oip::build_instance(spec);
      if (gen_hidden && *gen_hidden >= built.matrix.rows()) {
        std::cerr << "error: hidden index out of range\n";
        return 1;
      }
      const std::string out =
          gen_out.empty() ? gen_family + "_" + std::to_string(gen_n) + ".oip"
                          : gen_out;
      oip::write_instance_file(out, built.matrix, gen_hidden);
      std::cerr << "wrote " << built.matrix.rows() << "x" << built.matrix.cols()
                << " instance to " << out << '\n';
      return 0;
    }

    if (solve->parsed()) {
      oip::PlanPoint point = make_point(sf, sf.n, sf.m ? sf.m : sf.n * sf.n);
      if (sf.trace) trace_first_trial(point);
      std::vector<oip::PointResult> results{oip::run_trials(point)};
      return emit_results(sf, results);
    }

    if (bench->parsed()) {
      std::vector<oip::PointResult> results;
      std::vector<std::pair<double, double>> fit_points;
      for (std::uint32_t n : bench_n) {
        const std::vector<std::uint32_t> ms =
            bench_m.empty() ? std::vector<std::uint32_t>{n * n} : bench_m;
        for (std::uint32_t m : ms) {
          oip::PlanPoint point = make_point(bf, n, m);
          results.push_back(oip::run_trials(point));
          const double x = bench_fit == "loglogm"
                               ? std::log2(static_cast<double>(m))
                               : static_cast<double>(n);
          fit_points.emplace_back(x, results.back().stats.cost.mean);
        }
      }
      const int rc = emit_results(bf, results);
      if (rc == 0 && bench_fit != "none") {
        auto fit = oip::fit_scaling(fit_points);
        std::cerr << "fit x=" << (bench_fit == "loglogm" ? "log2(M)" : "N")
                  << " slope=" << fit.slope << " intercept=" << fit.intercept
                  << " r2=" << fit.r2 << '\n';
      }
      return rc;
    }

    if (verify->parsed()) return run_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
