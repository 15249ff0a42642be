#include <deepmemetic/evaluator.hpp>

#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace deepmemetic;
using testsupport::make_instance;

TEST_CASE("chain fixture needs two switches") {
  // Tools 1..4 as 0..3; J1={1,2}, J2={2,3}, J3={3,4}.
  const auto inst = make_instance(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  const JobSequence seq{0, 1, 2};
  CHECK(ktns_switches(inst, seq) == 2);
  CHECK(exact_min_switches(inst, seq) == 2);
  CHECK(testsupport::brute_force_switches(inst, seq) == 2);
  const auto plan = ktns(inst, seq);
  CHECK(plan.switches == 2);
  CHECK(count_insertions(plan) == 2);
  CHECK(plan_is_feasible(inst, seq, plan));
}

TEST_CASE("KTNS keeps the tool needed soonest") {
  // J1={1,2}, J2={3}, J3={1}; at step 2 tool 2 must go, not tool 1.
  const auto inst = make_instance(3, 2, {{0, 1}, {2}, {0}});
  const JobSequence seq{0, 1, 2};
  const auto plan = ktns(inst, seq);
  CHECK(plan.switches == 1);
  CHECK(plan.configs[0] == std::vector<int>{0, 1});
  CHECK(plan.configs[1] == std::vector<int>{0, 2});
  CHECK(testsupport::brute_force_switches(inst, seq) == 1);
  CHECK(exact_min_switches(inst, seq) == 1);
}

TEST_CASE("identical tool sets never switch") {
  const auto inst = make_instance(5, 3, {{1, 4}, {1, 4}, {1, 4}, {1, 4}});
  JobSequence seq{3, 1, 0, 2};
  do {
    CHECK(ktns_switches(inst, seq) == 0);
  } while (std::next_permutation(seq.begin(), seq.end()));
}

TEST_CASE("KTNS matches the brute-force and DP oracles") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 3;
    const int m = 4 + trial % 4;
    const int c = 2 + trial % 2;
    const auto inst = testsupport::random_instance(n, m, c, rng);
    JobSequence seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    do {
      const Fitness k = ktns_switches(inst, seq);
      REQUIRE(k == exact_min_switches(inst, seq));
      REQUIRE(k == testsupport::brute_force_switches(inst, seq));
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
}

TEST_CASE("plans are feasible and consistent") {
  const auto inst = generate_dataset(family_by_label("8z20x15"), 5);
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto seq = random_permutation(inst.jobs(), rng);
    const auto plan = ktns(inst, seq);
    CHECK(plan_is_feasible(inst, seq, plan));
    CHECK(count_insertions(plan) == plan.switches);
    CHECK(plan.switches == ktns_switches(inst, seq));
    for (const auto &config : plan.configs)
      CHECK(static_cast<int>(config.size()) <= inst.capacity());
  }
}

TEST_CASE("fitness charges the budget") {
  const auto inst = make_instance(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  EvalBudget budget{0, 2};
  CHECK(fitness(inst, {0, 1, 2}, budget) == 2);
  CHECK(budget.used == 1);
  CHECK(fitness(inst, {2, 1, 0}, budget) == 2);
  CHECK(budget.exhausted());
  CHECK_THROWS_AS(fitness(inst, {0, 1, 2}, budget), BudgetExhausted);
  CHECK(budget.used == 2);
}

TEST_CASE("invalid sequences are rejected") {
  const auto inst = make_instance(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(ktns(inst, {0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(ktns(inst, {0, 1}), InvalidArgument);
}

TEST_CASE("exact oracle size guard") {
  RequirementMatrix a = RequirementMatrix::Zero(17, 2);
  a(0, 0) = 1;
  a(1, 1) = 1;
  const ToSPInstance inst(2, a);
  CHECK_THROWS_AS(exact_min_switches(inst, {0, 1}), SizeGuard);
}

TEST_CASE("spare slots of the free initial load hold the tools needed soonest") {
  // C=3; J1={0}, J2={1}, J3={2}, J4={3}: tools 1 and 2 ride along for free.
  const auto inst = make_instance(4, 3, {{0}, {1}, {2}, {3}});
  const JobSequence seq{0, 1, 2, 3};
  const auto plan = ktns(inst, seq);
  CHECK(plan.configs[0] == std::vector<int>{0, 1, 2});
  CHECK(plan.switches == 1);
  CHECK(exact_min_switches(inst, seq) == 1);
  CHECK(testsupport::brute_force_switches(inst, seq) == 1);
}
