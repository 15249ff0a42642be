#include <deepmemetic/operators.hpp>

#include <doctest.h>

#include <numeric>
#include <set>

using namespace deepmemetic;

namespace {
JobSequence iota_seq(int n) {
  JobSequence s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}
} // namespace

TEST_CASE("swap neighbourhood") {
  const JobSequence s{0, 1, 2, 3};
  const auto nb = swap_neighbors(s);
  CHECK(nb.size() == 6);
  std::set<JobSequence> seen;
  std::size_t count = 0;
  for (const auto &x : nb) {
    CHECK(hamming_distance(s, x) == 2);
    CHECK(is_permutation_of_n(x, 4));
    seen.insert(x);
    ++count;
  }
  CHECK(count == 6);
  CHECK(seen.size() == 6);
  CHECK(*nb.begin() == JobSequence{1, 0, 2, 3});
  CHECK(swap_neighbors({0}).size() == 0);
  CHECK(swap_neighbors({0}).begin() == swap_neighbors({0}).end());
}

TEST_CASE("block move worked example") {
  // Length 2 starting at 1, second block at 4 (1-based).
  const BlockMove mv{2, 1, 4};
  CHECK(block_move_valid(mv, 6));
  CHECK(apply_block_move({0, 1, 2, 3, 4, 5}, mv) ==
        JobSequence{3, 4, 2, 0, 1, 5});
  CHECK_FALSE(block_move_valid({2, 1, 2}, 6)); // overlapping blocks
  CHECK_FALSE(block_move_valid({3, 1, 4}, 6)); // start > n - 2*length
  CHECK_THROWS_AS(apply_block_move(iota_seq(6), {3, 1, 4}), InvalidArgument);
}

TEST_CASE("block move sampling stays in range") {
  Rng rng(5);
  for (int n = 3; n <= 12; ++n) {
    std::set<int> lengths;
    for (int i = 0; i < 2000; ++i) {
      const BlockMove mv = sample_block_move(n, rng);
      REQUIRE(block_move_valid(mv, n));
      lengths.insert(mv.length);
    }
    CHECK(static_cast<int>(lengths.size()) == (n - 1) / 2);
  }
  CHECK_THROWS_AS(sample_block_move(2, rng), InvalidArgument);
}

TEST_CASE("APX alternates parents and drops repeats") {
  const JobSequence p1{0, 1, 2, 3, 4};
  const JobSequence p2{4, 3, 2, 1, 0};
  CHECK(apx_crossover(p1, p2, true) == JobSequence{0, 4, 1, 3, 2});
  CHECK(apx_crossover(p1, p2, false) == JobSequence{4, 0, 3, 1, 2});
  CHECK(apx_crossover(p1, p1, true) == p1);
  CHECK_THROWS_AS(apx_crossover(p1, JobSequence{0, 1}, true),
                  InvalidArgument);
}

TEST_CASE("mutation") {
  Rng rng(8);
  const auto s = iota_seq(9);
  CHECK(mutate(s, 0.0, rng) == s);
  for (int i = 0; i < 200; ++i) {
    const auto m = mutate(s, 1.0, rng);
    CHECK(is_permutation_of_n(m, 9));
    CHECK(m != s);
  }
  CHECK(mutate({1, 0}, 1.0, rng) == JobSequence{1, 0});
  CHECK_THROWS_AS(mutate(s, 1.5, rng), InvalidArgument);
  CHECK(default_mutation_rate(10) == doctest::Approx(0.1));
}

TEST_CASE("binary tournament") {
  Rng rng(2);
  std::vector<Candidate> pool{{{0}, 5}, {{0}, 3}, {{0}, 9}};
  std::vector<int> wins(3, 0);
  for (int i = 0; i < 9000; ++i)
    ++wins[binary_tournament(pool, rng)];
  // P(win) with replacement: best 5/9, middle 3/9, worst 1/9.
  CHECK(wins[1] == doctest::Approx(5000).epsilon(0.05));
  CHECK(wins[0] == doctest::Approx(3000).epsilon(0.08));
  CHECK(wins[2] == doctest::Approx(1000).epsilon(0.15));
  CHECK_THROWS_AS(binary_tournament(std::span<const Candidate>{}, rng),
                  InvalidArgument);
}

TEST_CASE("random permutations") {
  Rng rng(4);
  for (int i = 0; i < 100; ++i)
    CHECK(is_permutation_of_n(random_permutation(7, rng), 7));
  CHECK(random_permutation(0, rng).empty());
}
