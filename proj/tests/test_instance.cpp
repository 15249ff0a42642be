#include <deepmemetic/instance.hpp>

#include "support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace deepmemetic;

TEST_CASE("instance validation") {
  RequirementMatrix a(3, 2);
  a << 1, 0, 1, 1, 0, 1;
  CHECK_NOTHROW(ToSPInstance(2, a));
  CHECK_THROWS_AS(ToSPInstance(3, a), InvalidArgument); // C must be < m
  CHECK_THROWS_AS(ToSPInstance(0, a), InvalidArgument);
  RequirementMatrix b = a;
  b(0, 0) = 2;
  CHECK_THROWS_AS(ToSPInstance(2, b), InvalidArgument);
  RequirementMatrix c = RequirementMatrix::Zero(3, 2);
  c(0, 0) = 1;
  CHECK_THROWS_AS(ToSPInstance(2, c), InvalidArgument); // empty job
  RequirementMatrix d = RequirementMatrix::Ones(3, 2);
  CHECK_THROWS_AS(ToSPInstance(2, d), InvalidArgument); // job exceeds C
}

TEST_CASE("tools_of lists required tools in order") {
  auto inst = testsupport::make_instance(4, 2, {{3, 1}, {0}});
  CHECK(inst.tools_of(0) == std::vector<int>{1, 3});
  CHECK(inst.tools_of(1) == std::vector<int>{0});
  CHECK(inst.requires_tool(3, 0));
  CHECK_FALSE(inst.requires_tool(2, 0));
}

TEST_CASE("standard families") {
  const auto &fams = standard_families();
  REQUIRE(fams.size() == 16);
  CHECK(fams.front().label() == "4z10x9");
  CHECK(family_by_label("25z50x40").jobs == 50);
  CHECK(family_by_label("25z50x40").tools == 40);
  CHECK(family_by_label("25z50x40").min_tools == 9);
  CHECK(family_by_label("25z50x40").max_tools == 20);
  CHECK_THROWS_AS(family_by_label("3z3x3"), InvalidArgument);
}

TEST_CASE("generated datasets respect the family") {
  for (const auto &f : standard_families()) {
    const auto inst = generate_dataset(f, 7);
    CHECK(inst.jobs() == f.jobs);
    CHECK(inst.tools() == f.tools);
    CHECK(inst.capacity() == f.capacity);
    CHECK(inst.label() == f.label());
    std::vector<int> used(f.tools, 0);
    for (int j = 0; j < f.jobs; ++j) {
      const int k = static_cast<int>(inst.tools_of(j).size());
      CHECK(k >= f.min_tools);
      CHECK(k <= f.max_tools);
      for (int t : inst.tools_of(j))
        used[t] = 1;
      for (int o = 0; o < f.jobs; ++o)
        if (o != j)
          CHECK_FALSE(job_covered_by(inst, j, o));
    }
    for (int u : used)
      CHECK(u == 1);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const auto f = family_by_label("6z15x20");
  CHECK(generate_dataset(f, 11) == generate_dataset(f, 11));
  CHECK_FALSE(generate_dataset(f, 11) == generate_dataset(f, 12));
}

TEST_CASE("infeasible family is reported") {
  // Three tools, jobs of exactly one tool: at most three undominated jobs.
  InstanceFamily f{5, 3, 2, 1, 1};
  CHECK_THROWS_AS(generate_dataset(f, 1), InfeasibleFamily);
}

TEST_CASE("text format round trip") {
  const auto inst = generate_dataset(family_by_label("4z10x9"), 3);
  CHECK(parse_instance(format_instance(inst)) == inst);
  const auto dir = std::filesystem::temp_directory_path() / "dm_instance_rt";
  std::filesystem::create_directories(dir);
  save_instance(inst, dir / "x.tosp");
  CHECK(load_instance(dir / "x.tosp") == inst);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_instance("2 3 1\n1 0 1\n"), DimensionMismatch);
  CHECK_THROWS_AS(parse_instance("2 3 1\n1 0\n0 1\n"), DimensionMismatch);
  try {
    parse_instance("2 2 1\n1 x\n0 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}
