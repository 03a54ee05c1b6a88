#include <doctest.h>

#include <cmath>

#include "oip/bounds.hpp"
#include "oip/generators.hpp"

using namespace oip;

TEST_CASE("gen_grover builds the singleton family") {
  auto z = gen_grover(3);
  REQUIRE(z.rows() == 3);
  REQUIRE(z.cols() == 3);
  CHECK(z.row_string(0) == "100");
  CHECK(z.row_string(1) == "010");
  CHECK(z.row_string(2) == "001");
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(z.row_weight(i) == 1);

  auto big = gen_grover(200);
  CHECK(big.rows() == big.cols());
  for (std::uint32_t i = 0; i < big.rows(); ++i) {
    CHECK(big.row_weight(i) == 1);
    CHECK(big.bit(i, i));
  }
}

TEST_CASE("gen_hamming_ball small cases") {
  auto z = gen_hamming_ball(4, 1);
  REQUIRE(z.rows() == 5);
  CHECK(z.row_string(0) == "0000");
  CHECK(z.row_string(1) == "1000");
  CHECK(z.row_string(2) == "0100");
  CHECK(z.row_string(3) == "0010");
  CHECK(z.row_string(4) == "0001");

  auto zero = gen_hamming_ball(6, 0);
  REQUIRE(zero.rows() == 1);
  CHECK(zero.row_weight(0) == 0);
}

TEST_CASE("gen_hamming_ball row count matches the exact ball size") {
  for (std::uint32_t n : {6U, 10U, 20U}) {
    for (std::uint32_t k = 0; k <= std::min(n, 3U); ++k) {
      auto z = gen_hamming_ball(n, k);
      CHECK(BigInt(z.rows()) == hamming_ball_size(n, k));
      for (std::uint32_t i = 0; i < z.rows(); ++i)
        CHECK(z.row_weight(i) <= k);
    }
  }
  CHECK(gen_hamming_ball(20, 2).rows() == 211);
}

TEST_CASE("gen_hamming_ball refuses oversized balls with the exact size") {
  CHECK_THROWS_WITH_AS(gen_hamming_ball(20, 4, 1000),
                       doctest::Contains("6196"), std::invalid_argument);
}

TEST_CASE("gen_random is deterministic in the seed") {
  auto a = gen_random(64, 32, 0.5, 99);
  auto b = gen_random(64, 32, 0.5, 99);
  REQUIRE(a.rows() == b.rows());
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    CHECK(a.row_string(i) == b.row_string(i));
  auto c = gen_random(64, 32, 0.5, 100);
  bool all_same = true;
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    all_same = all_same && a.row_string(i) == c.row_string(i);
  CHECK_FALSE(all_same);
}

TEST_CASE("gen_random degenerate densities") {
  auto ones = gen_random(1, 16, 1.0, 5);
  CHECK(ones.row_weight(0) == 16);
  auto zeros = gen_random(1, 16, 0.0, 5);
  CHECK(zeros.row_weight(0) == 0);
  CHECK_THROWS_AS(gen_random(2, 16, 1.0, 5), std::invalid_argument);
}

TEST_CASE("gen_random rejects impossible requests") {
  CHECK_THROWS_AS(gen_random(20, 4, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_WITH_AS(gen_random(16, 4, 0.01, 1),
                       doctest::Contains("attempts"), std::invalid_argument);
  CHECK_THROWS_AS(gen_random(4, 4, 1.5, 1), std::invalid_argument);
}

TEST_CASE("gen_random column sums concentrate at the density") {
  auto z = gen_random(4096, 64, 0.5, 2025);
  const auto s = CandidateSet::full(4096);
  auto counts = column_ones(z, s, FlipMask(64));
  const double sigma = std::sqrt(4096.0 * 0.25);
  for (std::uint32_t c = 0; c < 64; ++c)
    CHECK(std::abs(static_cast<double>(counts[c]) - 2048.0) <= 5.0 * sigma);
}

TEST_CASE("build_instance dispatches by family") {
  InstanceSpec spec;
  spec.family = Family::grover;
  spec.n = 8;
  CHECK(build_instance(spec).matrix.rows() == 8);

  spec.family = Family::hamming_ball;
  spec.n = 6;
  spec.weight = 2;
  CHECK(build_instance(spec).matrix.rows() == 22);

  spec.family = Family::random_dense;
  spec.n = 16;
  spec.m = 100;
  spec.seed = 4;
  CHECK(build_instance(spec).matrix.rows() == 100);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::grover, Family::random_dense, Family::random_sparse,
                   Family::hamming_ball, Family::from_file})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK_FALSE(family_from_string("nope").has_value());
}
