#include "oip/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace oip {

namespace {

std::vector<std::uint32_t> collect_members(
    std::span<const std::uint64_t> words, std::uint32_t universe) {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t x = words[w];
    while (x) {
      const int b = std::countr_zero(x);
      const std::uint32_t idx = static_cast<std::uint32_t>(w * 64 + b);
      if (idx < universe) out.push_back(idx);
      x &= x - 1;
    }
  }
  return out;
}

}  // namespace

CandidateSet CandidateSet::full(std::uint32_t universe) {
  CandidateSet s;
  s.universe_ = universe;
  s.members_.resize(universe);
  std::iota(s.members_.begin(), s.members_.end(), 0U);
  s.words_.assign(words_for(universe), 0);
  for (std::uint32_t i = 0; i < universe; ++i) s.words_[i >> 6] |= 1ULL << (i & 63);
  return s;
}

CandidateSet CandidateSet::from_members(std::uint32_t universe,
                                        std::vector<std::uint32_t> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end())
    throw std::invalid_argument("CandidateSet: duplicate member");
  if (!members.empty() && members.back() >= universe)
    throw std::out_of_range("CandidateSet: member " +
                            std::to_string(members.back()) +
                            " outside universe " + std::to_string(universe));
  CandidateSet s;
  s.universe_ = universe;
  s.words_.assign(words_for(universe), 0);
  for (std::uint32_t i : members) s.words_[i >> 6] |= 1ULL << (i & 63);
  s.members_ = std::move(members);
  return s;
}

CandidateSet CandidateSet::from_bitmap(std::uint32_t universe,
                                       std::vector<std::uint64_t> words) {
  if (words.size() != words_for(universe))
    throw std::invalid_argument("CandidateSet: bitmap word count mismatch");
  if (universe & 63) {
    // clear padding bits
    words.back() &= (1ULL << (universe & 63)) - 1;
  }
  CandidateSet s;
  s.universe_ = universe;
  s.members_ = collect_members(words, universe);
  s.words_ = std::move(words);
  return s;
}

CandidateSet CandidateSet::intersect(const CandidateSet& other) const {
  if (universe_ != other.universe_)
    throw std::invalid_argument("CandidateSet: universe mismatch");
  std::vector<std::uint64_t> words(words_.size());
  for (std::size_t w = 0; w < words.size(); ++w)
    words[w] = words_[w] & other.words_[w];
  return from_bitmap(universe_, std::move(words));
}

CandidateSet CandidateSet::minus(const CandidateSet& other) const {
  if (universe_ != other.universe_)
    throw std::invalid_argument("CandidateSet: universe mismatch");
  std::vector<std::uint64_t> words(words_.size());
  for (std::size_t w = 0; w < words.size(); ++w)
    words[w] = words_[w] & ~other.words_[w];
  return from_bitmap(universe_, std::move(words));
}

bool CandidateSet::is_subset_of(const CandidateSet& other) const {
  if (universe_ != other.universe_) return false;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

OracleMatrix::OracleMatrix(std::uint32_t rows, std::uint32_t cols,
                           std::vector<std::uint64_t> flat_rows,
                           std::vector<std::uint32_t> labels)
    : rows_(rows),
      cols_(cols),
      row_stride_(words_for(cols)),
      col_stride_(words_for(rows)),
      row_bits_(std::move(flat_rows)),
      labels_(std::move(labels)) {
  if (rows_ == 0 || cols_ == 0)
    throw std::invalid_argument("OracleMatrix: M and N must be >= 1");
  if (row_bits_.size() != rows_ * row_stride_)
    throw std::invalid_argument("OracleMatrix: row data size mismatch");
  if (labels_.empty()) {
    labels_.resize(rows_);
    std::iota(labels_.begin(), labels_.end(), 0U);
  } else if (labels_.size() != rows_) {
    throw std::invalid_argument("OracleMatrix: label count mismatch");
  }
  if (cols_ & 63) {
    const std::uint64_t keep = (1ULL << (cols_ & 63)) - 1;
    for (std::uint32_t r = 0; r < rows_; ++r)
      row_bits_[r * row_stride_ + row_stride_ - 1] &= keep;
  }
  validate();
  build_columns();
}

OracleMatrix OracleMatrix::from_strings(const std::vector<std::string>& rows,
                                        std::vector<std::uint32_t> labels) {
  if (rows.empty()) throw std::invalid_argument("OracleMatrix: no rows");
  const std::uint32_t cols = static_cast<std::uint32_t>(rows[0].size());
  const std::size_t stride = words_for(cols);
  std::vector<std::uint64_t> flat(rows.size() * stride, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("OracleMatrix: ragged row " +
                                  std::to_string(r));
    for (std::uint32_t c = 0; c < cols; ++c) {
      const char ch = rows[r][c];
      if (ch == '1')
        flat[r * stride + (c >> 6)] |= 1ULL << (c & 63);
      else if (ch != '0')
        throw std::invalid_argument("OracleMatrix: bad character in row " +
                                    std::to_string(r));
    }
  }
  return OracleMatrix(static_cast<std::uint32_t>(rows.size()), cols,
                      std::move(flat), std::move(labels));
}

void OracleMatrix::validate() {
  // Candidate oracles are distinct functions; duplicate rows are rejected.
  std::vector<std::uint32_t> order(rows_);
  std::iota(order.begin(), order.end(), 0U);
  auto cmp = [this](std::uint32_t a, std::uint32_t b) {
    const std::uint64_t* ra = row_bits_.data() + a * row_stride_;
    const std::uint64_t* rb = row_bits_.data() + b * row_stride_;
    return std::lexicographical_compare(ra, ra + row_stride_, rb,
                                        rb + row_stride_);
  };
  std::sort(order.begin(), order.end(), cmp);
  for (std::uint32_t i = 1; i < rows_; ++i) {
    const std::uint64_t* ra = row_bits_.data() + order[i - 1] * row_stride_;
    const std::uint64_t* rb = row_bits_.data() + order[i] * row_stride_;
    if (std::equal(ra, ra + row_stride_, rb)) {
      throw std::invalid_argument(
          "OracleMatrix: duplicate rows " +
          std::to_string(std::min(order[i - 1], order[i])) + " and " +
          std::to_string(std::max(order[i - 1], order[i])));
    }
  }
}

void OracleMatrix::build_columns() {
  col_bits_.assign(static_cast<std::size_t>(cols_) * col_stride_, 0);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    const std::uint64_t* row = row_bits_.data() + r * row_stride_;
    const std::uint64_t rw = 1ULL << (r & 63);
    const std::size_t rword = r >> 6;
    for (std::size_t w = 0; w < row_stride_; ++w) {
      std::uint64_t x = row[w];
      while (x) {
        const int b = std::countr_zero(x);
        const std::size_t c = w * 64 + static_cast<std::size_t>(b);
        col_bits_[c * col_stride_ + rword] |= rw;
        x &= x - 1;
      }
    }
  }
}

std::uint32_t OracleMatrix::row_weight(std::uint32_t row) const {
  const std::uint64_t* r = row_bits_.data() + row * row_stride_;
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < row_stride_; ++i)
    w += static_cast<std::uint32_t>(std::popcount(r[i]));
  return w;
}

std::uint32_t OracleMatrix::row_weight(std::uint32_t row,
                                       const FlipMask& mask) const {
  const std::uint64_t* r = row_bits_.data() + row * row_stride_;
  auto mw = mask.words();
  std::uint32_t w = 0;
  // padding bits are zero in both operands, so the XOR never counts them
  for (std::size_t i = 0; i < row_stride_; ++i)
    w += static_cast<std::uint32_t>(std::popcount(r[i] ^ mw[i]));
  return w;
}

OracleMatrix OracleMatrix::submatrix(const CandidateSet& s) const {
  if (s.universe() != rows_)
    throw std::invalid_argument("submatrix: candidate set universe mismatch");
  if (s.empty()) throw std::invalid_argument("submatrix: empty candidate set");
  std::vector<std::uint64_t> flat(s.size() * row_stride_);
  std::vector<std::uint32_t> labels(s.size());
  std::size_t out = 0;
  for (std::uint32_t i : s.members()) {
    const std::uint64_t* r = row_bits_.data() + i * row_stride_;
    std::copy(r, r + row_stride_, flat.begin() + out * row_stride_);
    labels[out] = labels_[i];
    ++out;
  }
  return OracleMatrix(s.size(), cols_, std::move(flat), std::move(labels));
}

std::string OracleMatrix::row_string(std::uint32_t row) const {
  std::string s(cols_, '0');
  for (std::uint32_t c = 0; c < cols_; ++c)
    if (bit(row, c)) s[c] = '1';
  return s;
}

CandidateSet positive_rows(std::span<const std::uint32_t> t_cols,
                           const OracleMatrix& z, const CandidateSet& s,
                           const FlipMask& mask) {
  for (std::uint32_t c : t_cols)
    if (c >= z.cols())
      throw std::out_of_range("positive_rows: column " + std::to_string(c) +
                              " out of range");
  const std::size_t cw = z.col_stride();
  std::vector<std::uint64_t> acc(cw, 0);
  for (std::uint32_t c : t_cols) {
    auto col = z.col_words(c);
    if (mask.test(c)) {
      for (std::size_t w = 0; w < cw; ++w) acc[w] |= ~col[w];
    } else {
      for (std::size_t w = 0; w < cw; ++w) acc[w] |= col[w];
    }
  }
  auto sw = s.words();
  for (std::size_t w = 0; w < cw; ++w) acc[w] &= sw[w];
  return CandidateSet::from_bitmap(z.rows(), std::move(acc));
}

std::vector<std::uint32_t> column_ones(const OracleMatrix& z,
                                       const CandidateSet& s,
                                       const FlipMask& mask) {
  const std::uint32_t n = z.cols();
  std::vector<std::uint32_t> counts(n, 0);
  // Two strategies: column-bitmap AND when S is a large fraction of M,
  // otherwise iterate members' set bits.
  if (static_cast<std::uint64_t>(s.size()) * 32 >= z.rows()) {
    auto sw = s.words();
    for (std::uint32_t c = 0; c < n; ++c) {
      auto col = z.col_words(c);
      std::uint32_t ones = 0;
      for (std::size_t w = 0; w < col.size(); ++w)
        ones += static_cast<std::uint32_t>(std::popcount(col[w] & sw[w]));
      counts[c] = mask.test(c) ? s.size() - ones : ones;
    }
  } else {
    auto mw = mask.words();
    for (std::uint32_t i : s.members()) {
      auto row = z.row_words(i);
      for (std::size_t w = 0; w < row.size(); ++w) {
        std::uint64_t x = row[w] ^ mw[w];
        while (x) {
          const int b = std::countr_zero(x);
          counts[w * 64 + static_cast<std::size_t>(b)]++;
          x &= x - 1;
        }
      }
    }
  }
  return counts;
}

FlipMask normalize_one_sensitive(const OracleMatrix& z, const CandidateSet& s,
                                 const FlipMask& mask) {
  if (s.empty())
    throw std::invalid_argument("normalize_one_sensitive: empty candidate set");
  FlipMask out = mask;
  auto counts = column_ones(z, s, mask);
  for (std::uint32_t c = 0; c < z.cols(); ++c)
    if (2ULL * counts[c] > s.size()) out.toggle(c);
  return out;
}

bool is_one_sensitive(const OracleMatrix& z, const CandidateSet& s,
                      const FlipMask& mask) {
  auto counts = column_ones(z, s, mask);
  for (std::uint32_t c = 0; c < z.cols(); ++c)
    if (2ULL * counts[c] > s.size()) return false;
  return true;
}

}  // namespace oip
