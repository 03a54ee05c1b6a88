#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oip/bit_matrix.hpp"
#include "oip/rng.hpp"

namespace oip {

enum class NoiseKind { noiseless, iid_flip };

// What a failed G-query emits: nill, or a uniformly random element of T
// (a failed measurement still yields some basis state).
enum class GqFailureMode { nill, random_index };

// Behavior of MultiTargetGQ when the assumed target fraction overshoots the
// truth: success probability degrades linearly with the shortfall, or the
// query simply answers nill.
enum class UnderdenseMode { linear_degradation, nill_on_underdense };

struct NoiseModel {
  NoiseKind kind = NoiseKind::noiseless;
  double p = 1.0;           // per-S-query correctness probability
  double gq_success = 1.0;  // G-query success probability
  GqFailureMode failure_mode = GqFailureMode::random_index;

  static NoiseModel noiseless() { return {}; }
  static NoiseModel iid(double p, double gq_success,
                        GqFailureMode mode = GqFailureMode::random_index);
  // Adversarial floor: every stochastic subroutine at exactly 2/3.
  static NoiseModel worst_case() { return iid(2.0 / 3.0, 2.0 / 3.0); }

  void validate() const;
};

struct OracleParams {
  double grover_const = 1.0;  // c_g in the G-query charge formula
  UnderdenseMode underdense = UnderdenseMode::linear_degradation;
};

enum class QueryKind { sq, gq, mtgq };

struct QueryEvent {
  QueryKind kind;
  std::uint32_t t_size;  // |T| (1 for sq)
  std::uint32_t k1;      // true 1-count within T at call time
  std::uint64_t charge;
  std::int64_t result;  // returned index, or -1 for nill / the sq bit value
};

using QueryLog = std::vector<QueryEvent>;

// Charged oracle-call accounting, split by query kind and phase. An optional
// budget caps charges made while metering is on (the expire procedure);
// callers check would_exceed_budget() before charging so the cap is never
// crossed.
class CostLedger {
 public:
  void charge(QueryKind kind, std::uint64_t units);

  std::uint64_t sq_calls() const { return sq_; }
  std::uint64_t gq_calls() const { return gq_; }
  std::uint64_t mtgq_calls() const { return mtgq_; }
  std::uint64_t total() const { return sq_ + gq_ + mtgq_; }

  const std::map<std::string, std::uint64_t>& phase_costs() const {
    return phases_;
  }
  void set_phase(std::string name) { phase_ = std::move(name); }
  const std::string& phase() const { return phase_; }

  void install_budget(std::uint64_t cap) {
    budget_cap_ = cap;
    has_budget_ = true;
  }
  bool has_budget() const { return has_budget_; }
  std::uint64_t budget_cap() const { return budget_cap_; }
  std::uint64_t budget_used() const { return budget_used_; }
  bool would_exceed_budget(std::uint64_t upcoming) const {
    return has_budget_ && budget_used_ + upcoming > budget_cap_;
  }

  void set_metering(bool on) { metering_ = on; }
  bool metering() const { return metering_; }

 private:
  std::uint64_t sq_ = 0, gq_ = 0, mtgq_ = 0;
  std::map<std::string, std::uint64_t> phases_;
  std::string phase_;
  bool has_budget_ = false;
  bool metering_ = false;
  std::uint64_t budget_cap_ = 0;
  std::uint64_t budget_used_ = 0;
};

// Scoped phase tag for ledger charges.
class PhaseScope {
 public:
  PhaseScope(CostLedger& ledger, std::string name)
      : ledger_(ledger), prev_(ledger.phase()) {
    ledger_.set_phase(std::move(name));
  }
  ~PhaseScope() { ledger_.set_phase(prev_); }
  PhaseScope(const PhaseScope&) = delete;
  PhaseScope& operator=(const PhaseScope&) = delete;

 private:
  CostLedger& ledger_;
  std::string prev_;
};

// Scoped budget metering (on while inside the expiring procedure).
class MeterScope {
 public:
  explicit MeterScope(CostLedger& ledger) : ledger_(ledger) {
    ledger_.set_metering(true);
  }
  ~MeterScope() { ledger_.set_metering(false); }
  MeterScope(const MeterScope&) = delete;
  MeterScope& operator=(const MeterScope&) = delete;

 private:
  CostLedger& ledger_;
};

// The hidden oracle f: answers bit queries stochastically under the noise
// model and meters every charged call. Ground truth is visible only to the
// simulator (cost formulas) and the harness (success judging) — algorithms
// see nothing but query answers. Reads respect the installed flip mask.
class HiddenOracle {
 public:
  HiddenOracle(std::vector<std::uint64_t> truth_bits, std::uint32_t n,
               NoiseModel noise, OracleParams params, std::uint64_t seed,
               CostLedger& ledger);

  // Convenience: truth taken from row `hidden` of z.
  static HiddenOracle from_row(const OracleMatrix& z, std::uint32_t hidden,
                               NoiseModel noise, OracleParams params,
                               std::uint64_t seed, CostLedger& ledger);

  std::uint32_t n() const { return n_; }

  void set_flip_mask(FlipMask mask);
  const FlipMask& flip_mask() const { return mask_; }

  // Single-position query; charges exactly 1.
  int sq(std::uint32_t i);

  // Grover query over T (a duplicate-free index set): a uniformly random
  // 1-position of f within T, or nill. Charges ceil(c_g * sqrt(|T|/(K1+1)))
  // whatever the outcome.
  std::optional<std::uint32_t> gq(std::span<const std::uint32_t> t_cols);

  // Grover query assuming at least an r fraction of 1s in T; fixed charge
  // ceil(c_g * sqrt(1/r)).
  std::optional<std::uint32_t> multi_target_gq(
      std::span<const std::uint32_t> t_cols, double r);

  static std::uint64_t gq_cost(std::size_t t_size, std::uint32_t k1,
                               double grover_const);
  static std::uint64_t mtgq_cost(double r, double grover_const);
  std::uint64_t upcoming_mtgq_cost(double r) const {
    return mtgq_cost(r, params_.grover_const);
  }

  CostLedger& ledger() { return ledger_; }
  const NoiseModel& noise() const { return noise_; }
  const OracleParams& params() const { return params_; }

  void attach_log(QueryLog* log) { log_ = log; }

  // Harness-side ground truth; never consulted by the algorithms.
  bool true_bit(std::uint32_t i) const {
    return (truth_[i >> 6] >> (i & 63)) & 1ULL;
  }

 private:
  bool effective_bit(std::uint32_t i) const {
    return true_bit(i) != mask_.test(i);
  }
  std::optional<std::uint32_t> draw_outcome(
      std::span<const std::uint32_t> t_cols,
      const std::vector<std::uint32_t>& ones, double success_p);

  std::vector<std::uint64_t> truth_;
  std::uint32_t n_;
  NoiseModel noise_;
  OracleParams params_;
  Rng rng_;
  CostLedger& ledger_;
  FlipMask mask_;
  QueryLog* log_ = nullptr;
};

}  // namespace oip
