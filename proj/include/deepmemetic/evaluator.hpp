#ifndef DEEPMEMETIC_EVALUATOR_HPP
#define DEEPMEMETIC_EVALUATOR_HPP

#include <deepmemetic/common.hpp>
#include <deepmemetic/instance.hpp>

#include <cstdint>
#include <vector>

namespace deepmemetic {

/// Magazine contents per step plus the resulting switch count. The initial
/// load (configs[0]) is free; switches counts tool insertions after it.
struct LoadingPlan {
  std::vector<std::vector<int>> configs; // sorted tool indices per step
  Fitness switches = 0;
};

/// Evaluation counter. One fitness() call is one evaluation.
struct EvalBudget {
  std::int64_t used = 0;
  std::int64_t limit = 0;

  bool exhausted() const { return used >= limit; }
  std::int64_t remaining() const { return used >= limit ? 0 : limit - used; }
};

/// Keep Tool Needed Soonest. The free initial load holds the first job's
/// tools and fills spare slots with the tools needed soonest. Afterwards
/// each step inserts what its job needs; on overflow the loaded tools whose
/// next use lies furthest ahead are evicted (never-needed tools first,
/// lowest index on ties). Optimal for the fixed sequence.
LoadingPlan ktns(const ToSPInstance &inst, const JobSequence &seq);

/// Switch count of ktns() without materialising the plan.
Fitness ktns_switches(const ToSPInstance &inst, const JobSequence &seq);

/// Budgeted objective. Throws BudgetExhausted when budget.used == limit,
/// otherwise charges one evaluation.
Fitness fitness(const ToSPInstance &inst, const JobSequence &seq,
                EvalBudget &budget);

/// Recomputes the switch count of a plan: sum over k >= 1 of
/// |configs[k] \ configs[k-1]|.
Fitness count_insertions(const LoadingPlan &plan);

/// Checks capacity and requirement coverage of every configuration.
bool plan_is_feasible(const ToSPInstance &inst, const JobSequence &seq,
                      const LoadingPlan &plan);

/// Largest tool count accepted by exact_min_switches.
inline constexpr int kExactMaxTools = 16;

/// Minimum number of switches for `seq` by dynamic programming over all
/// C-subsets of tools; the first configuration is free. Independent of ktns(); used as its test oracle.
/// Throws SizeGuard when m > kExactMaxTools.
Fitness exact_min_switches(const ToSPInstance &inst, const JobSequence &seq);

} // namespace deepmemetic

#endif // DEEPMEMETIC_EVALUATOR_HPP
