#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oip/bit_matrix.hpp"
#include "oip/generators.hpp"
#include "oip/rng.hpp"

using namespace oip;

namespace {

std::vector<std::uint32_t> to_vec(const CandidateSet& s) {
  return {s.members().begin(), s.members().end()};
}

}  // namespace

TEST_CASE("positive_rows on a 3x2 matrix") {
  auto z = OracleMatrix::from_strings({"10", "01", "11"});
  auto s = CandidateSet::full(3);
  FlipMask mask(2);
  std::vector<std::uint32_t> t{0};
  CHECK(to_vec(positive_rows(t, z, s, mask)) ==
        std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("positive_rows with empty T is empty") {
  auto z = OracleMatrix::from_strings({"10", "01", "11"});
  auto s = CandidateSet::full(3);
  CHECK(positive_rows({}, z, s, FlipMask(2)).empty());
}

TEST_CASE("positive_rows on identity columns") {
  auto z = gen_grover(4);
  auto s = CandidateSet::full(4);
  std::vector<std::uint32_t> t{1, 2};
  CHECK(to_vec(positive_rows(t, z, s, FlipMask(4))) ==
        std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("positive_rows rejects out-of-range columns") {
  auto z = OracleMatrix::from_strings({"10", "01"});
  auto s = CandidateSet::full(2);
  std::vector<std::uint32_t> t{2};
  CHECK_THROWS_AS(positive_rows(t, z, s, FlipMask(2)), std::out_of_range);
}

TEST_CASE("positive_rows respects the flip mask") {
  auto z = OracleMatrix::from_strings({"10", "01", "11"});
  auto s = CandidateSet::full(3);
  FlipMask mask(2);
  mask.toggle(0);
  std::vector<std::uint32_t> t{0};
  CHECK(to_vec(positive_rows(t, z, s, mask)) == std::vector<std::uint32_t>{1});
}

TEST_CASE("positive_rows equals brute force on random small matrices") {
  Rng rng(99);
  for (int iter = 0; iter < 2000; ++iter) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(12));
    const std::uint32_t max_m =
        n >= 4 ? 12U : static_cast<std::uint32_t>(1U << n);
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(max_m));
    OracleMatrix z = gen_random(m, n, 0.5, rng.next());
    FlipMask mask(n);
    for (std::uint32_t c = 0; c < n; ++c)
      if (rng.bernoulli(0.3)) mask.toggle(c);
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < m; ++i)
      if (rng.bernoulli(0.6)) members.push_back(i);
    auto s = CandidateSet::from_members(m, members);
    std::vector<std::uint32_t> t_cols;
    for (std::uint32_t c = 0; c < n; ++c)
      if (rng.bernoulli(0.4)) t_cols.push_back(c);

    std::vector<std::uint32_t> expected;
    for (std::uint32_t i : members) {
      bool hit = false;
      for (std::uint32_t c : t_cols) hit = hit || z.bit(i, c, mask);
      if (hit) expected.push_back(i);
    }
    CHECK(to_vec(positive_rows(t_cols, z, s, mask)) == expected);
  }
}

TEST_CASE("positive_rows is monotone in T") {
  Rng rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const std::uint32_t n = 6 + static_cast<std::uint32_t>(rng.below(8));
    const std::uint32_t m = 2 + static_cast<std::uint32_t>(rng.below(20));
    OracleMatrix z = gen_random(m, n, 0.4, rng.next());
    auto s = CandidateSet::full(m);
    FlipMask mask(n);
    std::vector<std::uint32_t> small, large;
    for (std::uint32_t c = 0; c < n; ++c) {
      const double u = rng.unit();
      if (u < 0.3) small.push_back(c);
      if (u < 0.6) large.push_back(c);
    }
    auto rs = positive_rows(small, z, s, mask);
    auto rl = positive_rows(large, z, s, mask);
    CHECK(rs.is_subset_of(rl));
  }
}

TEST_CASE("normalize flips a majority-ones column") {
  auto z = OracleMatrix::from_strings({"100", "101", "110", "000"});
  auto s = CandidateSet::full(4);
  auto mask = normalize_one_sensitive(z, s, FlipMask(3));
  CHECK(mask.test(0));        // 3 ones out of 4
  CHECK_FALSE(mask.test(1));  // 1 one out of 4
  CHECK_FALSE(mask.test(2));
  CHECK(column_ones(z, s, mask)[0] == 1);
  CHECK(is_one_sensitive(z, s, mask));
}

TEST_CASE("normalize leaves a one-sensitive matrix unchanged") {
  auto z = OracleMatrix::from_strings({"10", "01", "00"});
  auto s = CandidateSet::full(3);
  const FlipMask id(2);
  CHECK(normalize_one_sensitive(z, s, id) == id);
}

TEST_CASE("normalize on a single row zeroes it out") {
  auto z = OracleMatrix::from_strings({"1011", "0000"});
  auto s = CandidateSet::from_members(2, {0});
  auto mask = normalize_one_sensitive(z, s, FlipMask(4));
  CHECK(z.row_weight(0, mask) == 0);
  CHECK(mask.test(0));
  CHECK_FALSE(mask.test(1));
  CHECK(mask.test(2));
  CHECK(mask.test(3));
}

TEST_CASE("normalize is idempotent and bounds every column") {
  Rng rng(123);
  for (int iter = 0; iter < 400; ++iter) {
    const std::uint32_t n = 10 + static_cast<std::uint32_t>(rng.below(6));
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(rng.below(40));
    OracleMatrix z = gen_random(m, n, rng.unit() * 0.6 + 0.2, rng.next());
    std::vector<std::uint32_t> members;
    for (std::uint32_t i = 0; i < m; ++i)
      if (rng.bernoulli(0.8)) members.push_back(i);
    if (members.empty()) members.push_back(0);
    auto s = CandidateSet::from_members(m, members);
    auto mask = normalize_one_sensitive(z, s, FlipMask(n));
    auto counts = column_ones(z, s, mask);
    for (std::uint32_t c = 0; c < n; ++c) CHECK(2 * counts[c] <= s.size());
    CHECK(normalize_one_sensitive(z, s, mask) == mask);
  }
}

TEST_CASE("candidate set operations") {
  auto a = CandidateSet::from_members(10, {1, 3, 5, 7});
  auto b = CandidateSet::from_members(10, {3, 4, 5});
  CHECK(to_vec(a.intersect(b)) == std::vector<std::uint32_t>{3, 5});
  CHECK(to_vec(a.minus(b)) == std::vector<std::uint32_t>{1, 7});
  CHECK(a.intersect(b).is_subset_of(a));
  CHECK(a.contains(7));
  CHECK_FALSE(a.contains(2));
  CHECK(CandidateSet::full(3).size() == 3);
  CHECK_THROWS_AS(CandidateSet::from_members(10, {4, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CandidateSet::from_members(4, {5}), std::out_of_range);
}

TEST_CASE("matrix rejects duplicate rows naming both") {
  CHECK_THROWS_WITH_AS(OracleMatrix::from_strings({"10", "01", "10"}),
                       doctest::Contains("0 and 2"), std::invalid_argument);
}

TEST_CASE("matrix rejects ragged rows and bad characters") {
  CHECK_THROWS_AS(OracleMatrix::from_strings({"10", "0"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(OracleMatrix::from_strings({"10", "0x"}),
                  std::invalid_argument);
}

TEST_CASE("submatrix keeps original labels and bits") {
  auto z = OracleMatrix::from_strings({"100", "010", "001", "110"});
  auto s = CandidateSet::from_members(4, {1, 3});
  auto sub = z.submatrix(s);
  REQUIRE(sub.rows() == 2);
  CHECK(sub.label(0) == 1);
  CHECK(sub.label(1) == 3);
  CHECK(sub.row_string(0) == "010");
  CHECK(sub.row_string(1) == "110");
}

TEST_CASE("row_weight under mask") {
  auto z = OracleMatrix::from_strings({"1100"});
  FlipMask mask(4);
  CHECK(z.row_weight(0) == 2);
  mask.toggle(0);
  mask.toggle(3);
  CHECK(z.row_weight(0, mask) == 2);  // 1^1, 1, 0, 0^1 -> 0110
  mask.toggle(1);
  CHECK(z.row_weight(0, mask) == 1);
}
