#include <deepmemetic/evaluator.hpp>

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

namespace deepmemetic {

namespace {

constexpr int kNever = std::numeric_limits<int>::max();

struct KtnsScratch {
  std::vector<int> next_use; // (step, tool) -> next step > step needing tool
  std::vector<char> loaded;
  std::vector<int> candidates;
};

// Returns the switch count; fills `plan` when non-null.
Fitness run_ktns(const ToSPInstance &inst, const JobSequence &seq,
                 LoadingPlan *plan) {
  thread_local KtnsScratch s;
  const int n = inst.jobs();
  const int m = inst.tools();
  const int cap = inst.capacity();
  assert(is_permutation_of_n(seq, n));

  s.next_use.assign(static_cast<std::size_t>(n) * m, kNever);
  for (int k = n - 2; k >= 0; --k) {
    int *row = &s.next_use[static_cast<std::size_t>(k) * m];
    const int *after = row + m;
    std::copy(after, after + m, row);
    for (int t : inst.tools_of(seq[k + 1]))
      row[t] = k + 1;
  }

  s.loaded.assign(m, 0);
  int load = 0;
  Fitness switches = 0;
  if (plan) {
    plan->configs.assign(n, {});
    plan->switches = 0;
  }

  for (int k = 0; k < n; ++k) {
    const auto &need = inst.tools_of(seq[k]);
    for (int t : need) {
      if (!s.loaded[t]) {
        s.loaded[t] = 1;
        ++load;
        if (k > 0)
          ++switches;
      }
    }
    if (k == 0 && load < cap) {
      // The initial load is free: fill the spare slots with the tools
      // needed soonest.
      const int *next = &s.next_use[0];
      s.candidates.clear();
      for (int t = 0; t < m; ++t)
        if (!s.loaded[t] && next[t] != kNever)
          s.candidates.push_back(t);
      const auto fill = std::min<std::size_t>(cap - load, s.candidates.size());
      std::partial_sort(s.candidates.begin(), s.candidates.begin() + fill,
                        s.candidates.end(), [next](int a, int b) {
                          if (next[a] != next[b])
                            return next[a] < next[b];
                          return a < b;
                        });
      for (std::size_t e = 0; e < fill; ++e)
        s.loaded[s.candidates[e]] = 1;
      load += static_cast<int>(fill);
    }
    if (load > cap) {
      const int *next = &s.next_use[static_cast<std::size_t>(k) * m];
      s.candidates.clear();
      for (int t = 0; t < m; ++t)
        if (s.loaded[t] && !std::binary_search(need.begin(), need.end(), t))
          s.candidates.push_back(t);
      const int evict = load - cap;
      std::partial_sort(s.candidates.begin(), s.candidates.begin() + evict,
                        s.candidates.end(), [next](int a, int b) {
                          if (next[a] != next[b])
                            return next[a] > next[b];
                          return a < b;
                        });
      for (int e = 0; e < evict; ++e)
        s.loaded[s.candidates[e]] = 0;
      load = cap;
    }
    if (plan) {
      auto &config = plan->configs[k];
      for (int t = 0; t < m; ++t)
        if (s.loaded[t])
          config.push_back(t);
    }
  }
  if (plan)
    plan->switches = switches;
  return switches;
}

} // namespace

LoadingPlan ktns(const ToSPInstance &inst, const JobSequence &seq) {
  if (!is_permutation_of_n(seq, inst.jobs()))
    throw InvalidArgument("sequence is not a permutation of the jobs");
  LoadingPlan plan;
  run_ktns(inst, seq, &plan);
  assert(plan_is_feasible(inst, seq, plan));
  return plan;
}

Fitness ktns_switches(const ToSPInstance &inst, const JobSequence &seq) {
  return run_ktns(inst, seq, nullptr);
}

Fitness fitness(const ToSPInstance &inst, const JobSequence &seq,
                EvalBudget &budget) {
  if (budget.exhausted())
    throw BudgetExhausted();
  ++budget.used;
  return run_ktns(inst, seq, nullptr);
}

Fitness count_insertions(const LoadingPlan &plan) {
  Fitness total = 0;
  for (std::size_t k = 1; k < plan.configs.size(); ++k) {
    const auto &prev = plan.configs[k - 1];
    for (int t : plan.configs[k])
      if (!std::binary_search(prev.begin(), prev.end(), t))
        ++total;
  }
  return total;
}

bool plan_is_feasible(const ToSPInstance &inst, const JobSequence &seq,
                      const LoadingPlan &plan) {
  if (plan.configs.size() != seq.size())
    return false;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const auto &config = plan.configs[k];
    if (static_cast<int>(config.size()) > inst.capacity())
      return false;
    if (!std::is_sorted(config.begin(), config.end()))
      return false;
    const auto &need = inst.tools_of(seq[k]);
    if (!std::includes(config.begin(), config.end(), need.begin(),
                       need.end()))
      return false;
  }
  return true;
}

Fitness exact_min_switches(const ToSPInstance &inst, const JobSequence &seq) {
  const int m = inst.tools();
  const int n = inst.jobs();
  const int cap = inst.capacity();
  if (m > kExactMaxTools)
    throw SizeGuard("exact_min_switches supports at most " +
                    std::to_string(kExactMaxTools) + " tools (m=" +
                    std::to_string(m) + ")");
  if (!is_permutation_of_n(seq, n))
    throw InvalidArgument("sequence is not a permutation of the jobs");

  // Magazine states: subsets of exactly `cap` tools. The first one is free,
  // so it may hold any tools besides the first job's.
  std::vector<std::uint32_t> states;
  for (std::uint32_t s = 0; s < (1u << m); ++s)
    if (std::popcount(s) == cap)
      states.push_back(s);

  auto job_mask = [&](int job) {
    std::uint32_t mask = 0;
    for (int t : inst.tools_of(job))
      mask |= 1u << t;
    return mask;
  };

  std::vector<std::uint32_t> prev_states, cur_states;
  std::vector<Fitness> prev_cost, cur_cost;
  const std::uint32_t first = job_mask(seq[0]);
  for (auto s : states)
    if ((s & first) == first) {
      prev_states.push_back(s);
      prev_cost.push_back(0);
    }

  for (int k = 1; k < n; ++k) {
    const std::uint32_t need = job_mask(seq[k]);
    cur_states.clear();
    cur_cost.clear();
    for (auto s : states) {
      if ((s & need) != need)
        continue;
      Fitness best = std::numeric_limits<Fitness>::max();
      for (std::size_t p = 0; p < prev_states.size(); ++p) {
        const Fitness c =
            prev_cost[p] + std::popcount(s & ~prev_states[p]);
        best = std::min(best, c);
      }
      cur_states.push_back(s);
      cur_cost.push_back(best);
    }
    std::swap(prev_states, cur_states);
    std::swap(prev_cost, cur_cost);
  }
  return *std::min_element(prev_cost.begin(), prev_cost.end());
}

} // namespace deepmemetic
