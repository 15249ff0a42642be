#ifndef DEEPMEMETIC_COOPERATION_HPP
#define DEEPMEMETIC_COOPERATION_HPP

#include <deepmemetic/agents.hpp>
#include <deepmemetic/architecture.hpp>
#include <deepmemetic/evaluator.hpp>
#include <deepmemetic/instance.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace deepmemetic {

/// Directed migration edges (sender, receiver), 0-based, sorted
/// lexicographically. Ring: i -> i+1 mod n. Broadcast: all n^2 pairs.
/// Random: n pairs drawn with replacement from all n^2 pairs.
std::vector<std::pair<int, int>> topology_edges(Topology topology, int n,
                                                Rng &rng);

class CooperativeNode;

/// Test and instrumentation hooks threaded through every node of a tree.
struct CooperationHooks {
  /// When false, synchronisation performs no migration.
  bool migration = true;
  /// Called after every synchronisation with the node and its cycle index.
  std::function<void(const CooperativeNode &, int cycle)> on_sync;
};

/// An agent running the cooperative cycle over its children: per cycle each
/// child searches for floor(floor(B / cycles) / n) evaluations, then every
/// topology edge (i, j) moves Best(i) into child j when strictly better
/// than Best(j). The pool of a node is the union of its children's pools.
class CooperativeNode : public Agent {
public:
  CooperativeNode(int cycles, Topology topology,
                  std::vector<std::unique_ptr<Agent>> children,
                  std::uint64_t seed, CooperationHooks hooks = {});

  void run_for(const ToSPInstance &inst, std::int64_t slice,
               EvalBudget &budget) override;

  Candidate best() const override;
  Candidate worst() const override;
  void inject(const Candidate &migrant) override;
  std::vector<Candidate> pool() const override;
  std::string name() const override;

  /// One migration round over freshly drawn topology edges.
  void synchronize();

  int cycles() const { return cycles_; }
  Topology topology() const { return topology_; }
  std::size_t arity() const { return children_.size(); }
  const Agent &child(std::size_t i) const { return *children_[i]; }
  Agent &child(std::size_t i) { return *children_[i]; }

private:
  int cycles_;
  Topology topology_;
  std::vector<std::unique_ptr<Agent>> children_;
  Rng rng_;
  CooperationHooks hooks_;
};

/// Instantiates the agent tree. Child i of a node seeded with s receives
/// derive_seed(s, i + 1); the node's own topology stream uses
/// derive_seed(s, 0).
std::unique_ptr<Agent> build_agent(const ArchitectureSpec &spec,
                                   const ToSPInstance &inst,
                                   std::uint64_t seed,
                                   const AgentParams &params = {},
                                   const CooperationHooks &hooks = {});

/// Per-child slice of a node receiving `node_budget`.
std::int64_t child_slice(const ArchitectureSpec &node,
                         std::int64_t node_budget);

/// Throws BudgetTooSmall when any slice in the tree floors to zero.
void check_budget(const ArchitectureSpec &spec, std::int64_t total_budget);

struct RunResult {
  Candidate best;
  std::int64_t evaluations = 0;
};

/// Runs an architecture for `total_budget` evaluations. Deterministic in
/// (spec, inst, total_budget, seed).
RunResult run(const ArchitectureSpec &spec, const ToSPInstance &inst,
              std::int64_t total_budget, std::uint64_t seed,
              const AgentParams &params = {},
              const CooperationHooks &hooks = {});

} // namespace deepmemetic

#endif // DEEPMEMETIC_COOPERATION_HPP
