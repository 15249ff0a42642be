#ifndef DEEPMEMETIC_TESTS_SUPPORT_HPP
#define DEEPMEMETIC_TESTS_SUPPORT_HPP

#include <deepmemetic/evaluator.hpp>
#include <deepmemetic/instance.hpp>

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

namespace testsupport {

using namespace deepmemetic;

// Builds an instance from per-job tool lists (0-based tools).
inline ToSPInstance make_instance(int tools, int capacity,
                                  std::vector<std::vector<int>> jobs) {
  RequirementMatrix a =
      RequirementMatrix::Zero(tools, static_cast<Eigen::Index>(jobs.size()));
  for (std::size_t j = 0; j < jobs.size(); ++j)
    for (int t : jobs[j])
      a(t, static_cast<Eigen::Index>(j)) = 1;
  return ToSPInstance(capacity, a);
}

// Random valid instance without the domination filtering of the generator.
inline ToSPInstance random_instance(int n, int m, int c, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> count(1, c);
  std::vector<std::vector<int>> jobs(n);
  std::vector<int> tools(m);
  for (int t = 0; t < m; ++t)
    tools[t] = t;
  for (auto &job : jobs) {
    std::shuffle(tools.begin(), tools.end(), rng);
    job.assign(tools.begin(), tools.begin() + count(rng));
  }
  return make_instance(m, c, jobs);
}

// Exhaustive search over every loading choice: any initial magazine, and
// at each step every subset of removable tools may be dropped. Exponential;
// only for tiny instances.
inline Fitness brute_force_switches(const ToSPInstance &inst,
                                    const JobSequence &seq) {
  const int c = inst.capacity();
  Fitness best = kUnevaluated;
  auto rec = [&](auto &&self, std::size_t k, std::vector<int> magazine,
                 Fitness cost) -> void {
    if (cost >= best)
      return;
    if (k == seq.size()) {
      best = cost;
      return;
    }
    const auto &need = inst.tools_of(seq[k]);
    std::vector<int> missing;
    for (int t : need)
      if (std::find(magazine.begin(), magazine.end(), t) == magazine.end())
        missing.push_back(t);
    std::vector<int> removable;
    for (int t : magazine)
      if (std::find(need.begin(), need.end(), t) == need.end())
        removable.push_back(t);
    const int overflow =
        static_cast<int>(magazine.size() + missing.size()) - c;
    const auto add = static_cast<Fitness>(missing.size());
    const int r = static_cast<int>(removable.size());
    for (int mask = 0; mask < (1 << r); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) < overflow)
        continue;
      std::vector<int> next;
      for (int t : need)
        next.push_back(t);
      for (int i = 0; i < r; ++i)
        if (!(mask & (1 << i)))
          next.push_back(removable[i]);
      self(self, k + 1, next, cost + add);
    }
  };
  // The first configuration is free: try every superset of the first job's
  // tools that fits the magazine.
  const int m = inst.tools();
  const auto &first = inst.tools_of(seq[0]);
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > c)
      continue;
    bool covers = true;
    for (int t : first)
      covers = covers && (mask & (1 << t));
    if (!covers)
      continue;
    std::vector<int> start;
    for (int t = 0; t < m; ++t)
      if (mask & (1 << t))
        start.push_back(t);
    rec(rec, 1, start, 0);
  }
  return best;
}

} // namespace testsupport

#endif
