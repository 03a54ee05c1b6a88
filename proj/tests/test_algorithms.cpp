#include <doctest.h>

#include <cmath>

#include "oip/algorithms.hpp"
#include "oip/bounds.hpp"
#include "oip/generators.hpp"
#include "oip/rng.hpp"

using namespace oip;

namespace {

RunResult run_roips(const OracleMatrix& z, std::uint32_t hidden,
                    NoiseModel noise, std::uint64_t seed) {
  CostLedger ledger;
  auto oracle = HiddenOracle::from_row(z, hidden, noise, {}, seed, ledger);
  return roips(CandidateSet::full(z.rows()), z, oracle);
}

}  // namespace

TEST_CASE("roips with a single candidate answers immediately at zero cost") {
  auto z = OracleMatrix::from_strings({"1010"});
  auto rr = run_roips(z, 0, NoiseModel::noiseless(), 1);
  CHECK(rr.outcome == Outcome::answered);
  CHECK(rr.answer == 0);
  CHECK(rr.cost_total == 0);
  CHECK(rr.iters_main == 0);
}

TEST_CASE("roips rejects an empty candidate set") {
  auto z = gen_grover(4);
  CostLedger ledger;
  auto oracle = HiddenOracle::from_row(z, 0, NoiseModel::noiseless(), {}, 1,
                                       ledger);
  CHECK_THROWS_AS(roips(CandidateSet::from_members(4, {}), z, oracle),
                  std::invalid_argument);
}

TEST_CASE("noiseless roips solves the Grover family at sqrt cost") {
  auto z = gen_grover(64);
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(64));
    auto rr = run_roips(z, hidden, NoiseModel::noiseless(), rng.next());
    CHECK(rr.outcome == Outcome::answered);
    CHECK(rr.answer == hidden);
    // one full-range G-query at ceil(sqrt(64/2)) plus one 60-sample majority
    CHECK(rr.cost_total == 66);
    CHECK(rr.cost_total <= 10 * std::sqrt(64.0));
  }
}

TEST_CASE("noisy roips keeps a constant success rate on random instances") {
  auto z = gen_random(4096, 64, 0.5, 555);
  Rng rng(556);
  int ok = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(4096));
    auto rr = run_roips(z, hidden, NoiseModel::worst_case(), rng.next());
    if (rr.outcome == Outcome::answered && rr.answer == hidden) ++ok;
  }
  CHECK(static_cast<double>(ok) / trials >= 2.0 / 3.0);
}

TEST_CASE("noisy roips can exhaust the candidate set, never crash") {
  auto z = gen_grover(8);
  NoiseModel noise = NoiseModel::worst_case();
  noise.failure_mode = GqFailureMode::nill;
  Rng rng(77);
  int exhausted = 0;
  for (int t = 0; t < 300; ++t) {
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(
        z, static_cast<std::uint32_t>(rng.below(8)), noise, {}, rng.next(),
        ledger);
    auto rr = roips(CandidateSet::full(8), z, oracle);
    if (rr.outcome == Outcome::exhausted) ++exhausted;
  }
  CHECK(exhausted > 0);
}

TEST_CASE("ground truth survives noiseless runs for every hidden row") {
  std::vector<OracleMatrix> zs;
  zs.push_back(gen_grover(16));
  zs.push_back(gen_random(48, 12, 0.5, 9));
  zs.push_back(gen_hamming_ball(7, 2));
  Rng rng(31337);
  for (const auto& z : zs) {
    for (std::uint32_t hidden = 0; hidden < z.rows(); ++hidden) {
      auto rr = run_roips(z, hidden, NoiseModel::noiseless(), rng.next());
      REQUIRE(rr.outcome == Outcome::answered);
      CHECK(rr.answer == hidden);
    }
  }
}

TEST_CASE("roipl beta formula clamps to 1/4") {
  RoiplConfig cfg;
  // log2 M = 32, (log2 log2 M)^2 = 25, log2 N = 10, 2N = 2048
  const double raw = 32.0 * 25.0 * 10.0 / 2048.0;
  CHECK(raw == doctest::Approx(3.90625));
  CHECK(cfg.beta(1024, 1ULL << 32) == doctest::Approx(0.25));
  CHECK(cfg.beta(64, 1ULL << 16) == doctest::Approx(0.25));
  cfg.beta_override = 0.125;
  CHECK(cfg.beta(64, 1ULL << 16) == doctest::Approx(0.125));
}

TEST_CASE("roipl budget formula") {
  RoiplConfig cfg;
  // beta = 1/4 so log2(1/beta) = 2
  const double expected = 45.0 * std::sqrt(64.0 * 16.0 * 6.0) / 2.0;
  CHECK(cfg.max_queries(64, 1ULL << 16) ==
        static_cast<std::uint64_t>(std::ceil(expected)));
  cfg.sigma = 2.0;
  CHECK(cfg.max_queries(64, 1ULL << 16) ==
        static_cast<std::uint64_t>(std::ceil(2.0 * expected)));
  cfg.max_queries_override = 7;
  CHECK(cfg.max_queries(64, 1ULL << 16) == 7);
}

TEST_CASE("roipl repetition levels") {
  CHECK(RoiplConfig::level_main(1ULL << 16) == 4);
  CHECK(RoiplConfig::level_main(1024) == 4);
  CHECK(RoiplConfig::level_main(2) == 1);
  CHECK(RoiplConfig::level_mtgs(64, 1ULL << 16) == 1);
  // log2(32/2) = 4, so the doubly-iterated level is ceil(log2 4) = 2
  CHECK(RoiplConfig::level_mtgs(4, 1ULL << 32) == 2);
  CHECK(RoiplConfig::level_mtgs(64, 64) == 1);
}

TEST_CASE("roipl validates its parameters") {
  auto z = gen_grover(4);
  CostLedger ledger;
  auto oracle = HiddenOracle::from_row(z, 0, NoiseModel::noiseless(), {}, 1,
                                       ledger);
  RoiplConfig cfg;
  cfg.threshold_exp = 0.5;
  CHECK_THROWS_AS(roipl(z, oracle, cfg), std::invalid_argument);
  cfg = {};
  cfg.beta_override = 0.5;
  CHECK_THROWS_AS(roipl(z, oracle, cfg), std::invalid_argument);
}

TEST_CASE("roipl delegates to roips below the size threshold") {
  auto z = gen_random(64, 16, 0.5, 808);
  Rng rng(809);
  for (int t = 0; t < 25; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(64));
    const std::uint64_t seed = rng.next();

    CostLedger l1;
    auto o1 = HiddenOracle::from_row(z, hidden, NoiseModel::worst_case(), {},
                                     seed, l1);
    auto direct = roips(CandidateSet::full(64), z, o1);

    CostLedger l2;
    auto o2 = HiddenOracle::from_row(z, hidden, NoiseModel::worst_case(), {},
                                     seed, l2);
    auto via = roipl(z, o2);  // default threshold 16^10 >> 64

    CHECK(via.iters_main == 0);
    CHECK(via.outcome == direct.outcome);
    if (via.outcome == Outcome::answered) CHECK(via.answer == direct.answer);
    CHECK(via.cost_total == direct.cost_total);
  }
}

TEST_CASE("noiseless roipl identifies across the size threshold") {
  auto z = gen_random(4096, 64, 0.5, 611);
  RoiplConfig cfg;
  cfg.threshold_exp = 1.5;
  Rng rng(612);
  for (int t = 0; t < 50; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(4096));
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(z, hidden, NoiseModel::noiseless(),
                                         {}, rng.next(), ledger);
    auto rr = roipl(z, oracle, cfg);
    REQUIRE(rr.outcome == Outcome::answered);
    CHECK(rr.answer == hidden);
    CHECK(rr.iters_main >= 1);
    CHECK(rr.budget_used <= rr.budget_cap);
  }
}

TEST_CASE("roipl answers in original labels after relabeling") {
  // force several main-loop rounds, then check the final answer is an index
  // into the original matrix
  auto z = gen_random(512, 16, 0.5, 2121);
  RoiplConfig cfg;
  cfg.threshold_exp = 1.0;
  Rng rng(2122);
  for (int t = 0; t < 30; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(512));
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(z, hidden, NoiseModel::noiseless(),
                                         {}, rng.next(), ledger);
    auto rr = roipl(z, oracle, cfg);
    REQUIRE(rr.outcome == Outcome::answered);
    CHECK(rr.answer == hidden);
  }
}

TEST_CASE("roipl expires against a tiny budget and freezes the ledger") {
  auto z = gen_hamming_ball(12, 1);  // covering always fails here
  RoiplConfig cfg;
  cfg.threshold_exp = 1.0;
  cfg.max_queries_override = 3;  // below one multi-target draw
  CostLedger ledger;
  auto oracle =
      HiddenOracle::from_row(z, 0, NoiseModel::noiseless(), {}, 5, ledger);
  auto rr = roipl(z, oracle, cfg);
  CHECK(rr.outcome == Outcome::expired);
  CHECK(rr.budget_cap == 3);
  CHECK(rr.budget_used == 0);
  CHECK(rr.cost_mtgq == 0);
  CHECK(ledger.total() == rr.cost_total);
}

TEST_CASE("roipl never spends past the budget cap") {
  auto z = gen_hamming_ball(12, 2);
  Rng rng(99);
  for (std::uint64_t cap : {1ULL, 5ULL, 20ULL, 100ULL, 500ULL}) {
    RoiplConfig cfg;
    cfg.threshold_exp = 1.0;
    cfg.max_queries_override = cap;
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(
        z, static_cast<std::uint32_t>(rng.below(z.rows())),
        NoiseModel::worst_case(), {}, rng.next(), ledger);
    roipl(z, oracle, cfg);
    CHECK(ledger.budget_used() <= cap);
  }
}

TEST_CASE("baseline on one candidate is free") {
  auto z = OracleMatrix::from_strings({"0101"});
  CostLedger ledger;
  auto oracle =
      HiddenOracle::from_row(z, 0, NoiseModel::noiseless(), {}, 1, ledger);
  auto rr = classical_baseline(z, oracle);
  CHECK(rr.outcome == Outcome::answered);
  CHECK(rr.cost_total == 0);
}

TEST_CASE("noiseless baseline scans the Grover family linearly on average") {
  auto z = gen_grover(64);
  Rng rng(404);
  double total = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(64));
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(z, hidden, NoiseModel::noiseless(),
                                         {}, rng.next(), ledger);
    auto rr = classical_baseline(z, oracle);
    REQUIRE(rr.outcome == Outcome::answered);
    CHECK(rr.answer == hidden);
    total += static_cast<double>(rr.cost_total);
  }
  const double mean = total / trials;
  CHECK(mean > 64.0 / 4.0);
  CHECK(mean < 3.0 * 64.0 / 4.0);
}

TEST_CASE("noiseless baseline halves dense random instances") {
  auto z = gen_random(4096, 64, 0.5, 31);
  Rng rng(32);
  double total = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto hidden = static_cast<std::uint32_t>(rng.below(4096));
    CostLedger ledger;
    auto oracle = HiddenOracle::from_row(z, hidden, NoiseModel::noiseless(),
                                         {}, rng.next(), ledger);
    auto rr = classical_baseline(z, oracle);
    REQUIRE(rr.outcome == Outcome::answered);
    CHECK(rr.answer == hidden);
    total += static_cast<double>(rr.cost_total);
  }
  const double mean = total / trials;
  CHECK(mean >= 12.0);  // log2(4096) distinguishing queries at least
  CHECK(mean <= 20.0);
}

TEST_CASE("noisy baseline repeats each query Theta(log M) times") {
  auto z = gen_random(256, 32, 0.5, 77);
  CostLedger ledger;
  auto oracle = HiddenOracle::from_row(z, 3, NoiseModel::worst_case(), {}, 78,
                                       ledger);
  auto rr = classical_baseline(z, oracle);
  const std::uint32_t reps = (9 * ceil_log2(256)) | 1U;
  CHECK(rr.cost_total == static_cast<std::uint64_t>(rr.iters_main) * reps);
}

TEST_CASE("run results reconcile with the ledger") {
  auto z = gen_random(256, 32, 0.5, 123);
  CostLedger ledger;
  auto oracle = HiddenOracle::from_row(z, 17, NoiseModel::worst_case(), {},
                                       124, ledger);
  auto rr = roips(CandidateSet::full(256), z, oracle);
  CHECK(rr.cost_total == rr.cost_sq + rr.cost_gq + rr.cost_mtgq);
  CHECK(rr.cost_total == ledger.total());
  std::uint64_t phase_sum = 0;
  for (const auto& [name, cost] : rr.phase_costs) phase_sum += cost;
  CHECK(phase_sum == rr.cost_total);
}
