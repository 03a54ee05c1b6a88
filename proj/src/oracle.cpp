#include "oip/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oip {

NoiseModel NoiseModel::iid(double p, double gq_success, GqFailureMode mode) {
  NoiseModel m;
  m.kind = NoiseKind::iid_flip;
  m.p = p;
  m.gq_success = gq_success;
  m.failure_mode = mode;
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  if (p < 2.0 / 3.0 - 1e-12 || p > 1.0)
    throw std::invalid_argument("NoiseModel: p must be in [2/3, 1]");
  if (gq_success < 2.0 / 3.0 - 1e-12 || gq_success > 1.0)
    throw std::invalid_argument("NoiseModel: gq_success must be in [2/3, 1]");
}

void CostLedger::charge(QueryKind kind, std::uint64_t units) {
  switch (kind) {
    case QueryKind::sq: sq_ += units; break;
    case QueryKind::gq: gq_ += units; break;
    case QueryKind::mtgq: mtgq_ += units; break;
  }
  if (!phase_.empty()) phases_[phase_] += units;
  if (metering_) budget_used_ += units;
}

HiddenOracle::HiddenOracle(std::vector<std::uint64_t> truth_bits,
                           std::uint32_t n, NoiseModel noise,
                           OracleParams params, std::uint64_t seed,
                           CostLedger& ledger)
    : truth_(std::move(truth_bits)),
      n_(n),
      noise_(noise),
      params_(params),
      rng_(seed),
      ledger_(ledger),
      mask_(n) {
  if (n_ == 0) throw std::invalid_argument("HiddenOracle: N must be >= 1");
  if (truth_.size() != words_for(n_))
    throw std::invalid_argument("HiddenOracle: truth word count mismatch");
  noise_.validate();
  if (params_.grover_const <= 0.0)
    throw std::invalid_argument("HiddenOracle: grover_const must be > 0");
}

HiddenOracle HiddenOracle::from_row(const OracleMatrix& z, std::uint32_t hidden,
                                    NoiseModel noise, OracleParams params,
                                    std::uint64_t seed, CostLedger& ledger) {
  if (hidden >= z.rows())
    throw std::out_of_range("HiddenOracle: hidden row out of range");
  auto row = z.row_words(hidden);
  return HiddenOracle(std::vector<std::uint64_t>(row.begin(), row.end()),
                      z.cols(), noise, params, seed, ledger);
}

void HiddenOracle::set_flip_mask(FlipMask mask) {
  if (mask.cols() != n_)
    throw std::invalid_argument("HiddenOracle: flip mask size mismatch");
  mask_ = std::move(mask);
}

int HiddenOracle::sq(std::uint32_t i) {
  if (i >= n_) throw std::out_of_range("sq: index out of range");
  ledger_.charge(QueryKind::sq, 1);
  int bit = effective_bit(i) ? 1 : 0;
  if (noise_.kind == NoiseKind::iid_flip && !rng_.bernoulli(noise_.p))
    bit ^= 1;
  if (log_) log_->push_back({QueryKind::sq, 1, 0, 1, bit});
  return bit;
}

std::uint64_t HiddenOracle::gq_cost(std::size_t t_size, std::uint32_t k1,
                                    double grover_const) {
  const double c =
      grover_const * std::sqrt(static_cast<double>(t_size) / (k1 + 1.0));
  return static_cast<std::uint64_t>(std::ceil(c));
}

std::uint64_t HiddenOracle::mtgq_cost(double r, double grover_const) {
  return static_cast<std::uint64_t>(std::ceil(grover_const * std::sqrt(1.0 / r)));
}

std::optional<std::uint32_t> HiddenOracle::draw_outcome(
    std::span<const std::uint32_t> t_cols,
    const std::vector<std::uint32_t>& ones, double success_p) {
  const bool success =
      success_p >= 1.0 ? true : (success_p <= 0.0 ? false : rng_.bernoulli(success_p));
  if (success) {
    if (ones.empty()) return std::nullopt;
    return ones[rng_.below(ones.size())];
  }
  if (noise_.failure_mode == GqFailureMode::nill) return std::nullopt;
  return t_cols[rng_.below(t_cols.size())];
}

std::optional<std::uint32_t> HiddenOracle::gq(
    std::span<const std::uint32_t> t_cols) {
  if (t_cols.empty()) throw std::invalid_argument("gq: empty column set");
  std::vector<std::uint32_t> ones;
  for (std::uint32_t c : t_cols) {
    if (c >= n_) throw std::out_of_range("gq: index out of range");
    if (effective_bit(c)) ones.push_back(c);
  }
  const std::uint32_t k1 = static_cast<std::uint32_t>(ones.size());
  const std::uint64_t charge = gq_cost(t_cols.size(), k1, params_.grover_const);
  ledger_.charge(QueryKind::gq, charge);

  const double s =
      noise_.kind == NoiseKind::noiseless ? 1.0 : noise_.gq_success;
  auto out = draw_outcome(t_cols, ones, s);
  if (log_)
    log_->push_back({QueryKind::gq, static_cast<std::uint32_t>(t_cols.size()),
                     k1, charge, out ? static_cast<std::int64_t>(*out) : -1});
  return out;
}

std::optional<std::uint32_t> HiddenOracle::multi_target_gq(
    std::span<const std::uint32_t> t_cols, double r) {
  if (t_cols.empty())
    throw std::invalid_argument("multi_target_gq: empty column set");
  if (!(r > 0.0) || r > 1.0)
    throw std::invalid_argument("multi_target_gq: r must be in (0, 1]");
  std::vector<std::uint32_t> ones;
  for (std::uint32_t c : t_cols) {
    if (c >= n_) throw std::out_of_range("multi_target_gq: index out of range");
    if (effective_bit(c)) ones.push_back(c);
  }
  const std::uint32_t k1 = static_cast<std::uint32_t>(ones.size());
  const std::uint64_t charge = mtgq_cost(r, params_.grover_const);
  ledger_.charge(QueryKind::mtgq, charge);

  const double s =
      noise_.kind == NoiseKind::noiseless ? 1.0 : noise_.gq_success;
  const double phi = static_cast<double>(k1) / static_cast<double>(t_cols.size());
  double success_p;
  if (phi >= r) {
    success_p = s;
  } else if (params_.underdense == UnderdenseMode::nill_on_underdense) {
    success_p = -1.0;  // forced failure, reported as nill below
  } else {
    success_p = s * (phi / r);
  }

  std::optional<std::uint32_t> out;
  if (success_p < 0.0)
    out = std::nullopt;
  else
    out = draw_outcome(t_cols, ones, success_p);
  if (log_)
    log_->push_back({QueryKind::mtgq,
                     static_cast<std::uint32_t>(t_cols.size()), k1, charge,
                     out ? static_cast<std::int64_t>(*out) : -1});
  return out;
}

}  // namespace oip
