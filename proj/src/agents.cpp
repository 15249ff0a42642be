#include <deepmemetic/agents.hpp>

#include <algorithm>
#include <cassert>

namespace deepmemetic {

std::string to_string(AgentKind kind) {
  switch (kind) {
  case AgentKind::HC:
    return "HC";
  case AgentKind::TS:
    return "TS";
  case AgentKind::CE:
    return "CE";
  case AgentKind::CEM:
    return "CEM";
  case AgentKind::MAHC:
    return "MAHC";
  case AgentKind::MATS:
    return "MATS";
  }
  return "?";
}

std::optional<AgentKind> agent_kind_from_string(const std::string &name) {
  for (AgentKind k : all_agent_kinds())
    if (to_string(k) == name)
      return k;
  return std::nullopt;
}

const std::vector<AgentKind> &all_agent_kinds() {
  static const std::vector<AgentKind> kinds = {
      AgentKind::HC,  AgentKind::TS,   AgentKind::CE,
      AgentKind::CEM, AgentKind::MAHC, AgentKind::MATS};
  return kinds;
}

void SearchAgent::run_for(const ToSPInstance &inst, std::int64_t slice,
                          EvalBudget &budget) {
  if (slice < 0)
    throw InvalidArgument("negative evaluation slice");
  EvalBudget local{0, std::min(slice, budget.remaining())};
  while (!local.exhausted() && !finished()) {
    [[maybe_unused]] const auto before = local.used;
    step(inst, local);
    assert(local.used == before + 1);
  }
  budget.used += local.used;
}

std::pair<int, int> sample_swap_pair(int n, Rng &rng) {
  std::uniform_int_distribution<int> first(0, n - 1);
  std::uniform_int_distribution<int> second(0, n - 2);
  const int i = first(rng);
  int j = second(rng);
  if (j >= i)
    ++j;
  return {std::min(i, j), std::max(i, j)};
}

std::unique_ptr<SearchAgent> make_agent(AgentKind kind,
                                        const ToSPInstance &inst,
                                        std::uint64_t seed,
                                        const AgentParams &params) {
  const int n = inst.jobs();
  switch (kind) {
  case AgentKind::HC:
    return std::make_unique<HillClimber>(n, seed, params);
  case AgentKind::TS:
    return std::make_unique<TabuSearch>(n, seed, params);
  case AgentKind::CE:
    return std::make_unique<CrossEntropy>(n, 1, seed, params);
  case AgentKind::CEM:
    return std::make_unique<CrossEntropy>(n, params.cem_pmfs, seed, params);
  case AgentKind::MAHC:
    return std::make_unique<MemeticAlgorithm>(n, AgentKind::HC, seed, params);
  case AgentKind::MATS:
    return std::make_unique<MemeticAlgorithm>(n, AgentKind::TS, seed, params);
  }
  throw InvalidArgument("unknown agent kind");
}

} // namespace deepmemetic
