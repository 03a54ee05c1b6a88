#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace oip {

inline std::size_t words_for(std::uint64_t bits) {
  return static_cast<std::size_t>((bits + 63) / 64);
}

// Per-column flip record. A set bit means reads of that column (matrix and
// oracle alike) are XOR-corrected. Toggling twice restores the original view.
class FlipMask {
 public:
  FlipMask() = default;
  explicit FlipMask(std::uint32_t cols)
      : cols_(cols), words_(words_for(cols), 0) {}

  std::uint32_t cols() const { return cols_; }

  bool test(std::uint32_t col) const {
    return (words_[col >> 6] >> (col & 63)) & 1ULL;
  }

  void toggle(std::uint32_t col) { words_[col >> 6] ^= 1ULL << (col & 63); }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const FlipMask&) const = default;

 private:
  std::uint32_t cols_ = 0;
  std::vector<std::uint64_t> words_;
};

// Subset of row indices of a parent matrix. Kept as a sorted member vector
// plus a bitmap over the universe, so membership is O(1) and iteration order
// is deterministic.
class CandidateSet {
 public:
  CandidateSet() = default;

  static CandidateSet full(std::uint32_t universe);
  // members must be in range; duplicates rejected. Sorted internally.
  static CandidateSet from_members(std::uint32_t universe,
                                   std::vector<std::uint32_t> members);
  static CandidateSet from_bitmap(std::uint32_t universe,
                                  std::vector<std::uint64_t> words);

  std::uint32_t universe() const { return universe_; }
  std::uint32_t size() const {
    return static_cast<std::uint32_t>(members_.size());
  }
  bool empty() const { return members_.empty(); }

  bool contains(std::uint32_t i) const {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1ULL);
  }

  std::span<const std::uint32_t> members() const { return members_; }
  std::span<const std::uint64_t> words() const { return words_; }

  CandidateSet intersect(const CandidateSet& other) const;
  CandidateSet minus(const CandidateSet& other) const;
  bool is_subset_of(const CandidateSet& other) const;

  bool operator==(const CandidateSet& other) const {
    return universe_ == other.universe_ && members_ == other.members_;
  }

 private:
  std::uint32_t universe_ = 0;
  std::vector<std::uint32_t> members_;
  std::vector<std::uint64_t> words_;
};

// Immutable M x N bit matrix of candidate oracles, bit-packed both row-major
// and column-major. Rows are validated to be pairwise distinct on
// construction. Labels carry original row identities through relabeling.
class OracleMatrix {
 public:
  // flat_rows is row-major, words_for(cols) words per row, padding bits zero.
  OracleMatrix(std::uint32_t rows, std::uint32_t cols,
               std::vector<std::uint64_t> flat_rows,
               std::vector<std::uint32_t> labels = {});

  static OracleMatrix from_strings(const std::vector<std::string>& rows,
                                   std::vector<std::uint32_t> labels = {});

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }

  bool bit(std::uint32_t row, std::uint32_t col) const {
    return (row_bits_[row * row_stride_ + (col >> 6)] >> (col & 63)) & 1ULL;
  }
  bool bit(std::uint32_t row, std::uint32_t col, const FlipMask& mask) const {
    return bit(row, col) != mask.test(col);
  }

  std::uint32_t label(std::uint32_t row) const { return labels_[row]; }
  std::span<const std::uint32_t> labels() const { return labels_; }

  std::span<const std::uint64_t> row_words(std::uint32_t row) const {
    return {row_bits_.data() + row * row_stride_, row_stride_};
  }
  std::span<const std::uint64_t> col_words(std::uint32_t col) const {
    return {col_bits_.data() + col * col_stride_, col_stride_};
  }
  std::size_t row_stride() const { return row_stride_; }
  std::size_t col_stride() const { return col_stride_; }

  std::uint32_t row_weight(std::uint32_t row) const;
  std::uint32_t row_weight(std::uint32_t row, const FlipMask& mask) const;

  // Z(S): rows restricted to S, labels mapped through. Row order follows S.
  OracleMatrix submatrix(const CandidateSet& s) const;

  std::string row_string(std::uint32_t row) const;

 private:
  void build_columns();
  void validate();

  std::uint32_t rows_ = 0;
  std::uint32_t cols_ = 0;
  std::size_t row_stride_ = 0;
  std::size_t col_stride_ = 0;
  std::vector<std::uint64_t> row_bits_;
  std::vector<std::uint64_t> col_bits_;
  std::vector<std::uint32_t> labels_;
};

// Rows of S with a 1 (under mask) in at least one column of T.
// Deterministic, no oracle involvement. Throws std::out_of_range on a bad
// column index.
CandidateSet positive_rows(std::span<const std::uint32_t> t_cols,
                           const OracleMatrix& z, const CandidateSet& s,
                           const FlipMask& mask);

// Count of 1-entries per column of Z(S), under mask.
std::vector<std::uint32_t> column_ones(const OracleMatrix& z,
                                       const CandidateSet& s,
                                       const FlipMask& mask);

// Returns mask updated so every column of Z(S) has #1s <= #0s. Only columns
// violating the rule are toggled; applying again with the same S is a no-op.
FlipMask normalize_one_sensitive(const OracleMatrix& z, const CandidateSet& s,
                                 const FlipMask& mask);

bool is_one_sensitive(const OracleMatrix& z, const CandidateSet& s,
                      const FlipMask& mask);

}  // namespace oip
