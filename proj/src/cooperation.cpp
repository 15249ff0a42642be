#include <deepmemetic/cooperation.hpp>

#include <algorithm>

namespace deepmemetic {

std::vector<std::pair<int, int>> topology_edges(Topology topology, int n,
                                                Rng &rng) {
  std::vector<std::pair<int, int>> edges;
  switch (topology) {
  case Topology::Ring:
    for (int i = 0; i < n; ++i)
      edges.emplace_back(i, (i + 1) % n);
    break;
  case Topology::Broadcast:
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        edges.emplace_back(i, j);
    break;
  case Topology::Random: {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int e = 0; e < n; ++e) {
      const int i = pick(rng);
      const int j = pick(rng);
      edges.emplace_back(i, j);
    }
    break;
  }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

CooperativeNode::CooperativeNode(int cycles, Topology topology,
                                 std::vector<std::unique_ptr<Agent>> children,
                                 std::uint64_t seed, CooperationHooks hooks)
    : cycles_(cycles), topology_(topology), children_(std::move(children)),
      rng_(seed), hooks_(std::move(hooks)) {
  if (cycles_ < 1)
    throw InvalidArgument("cooperative node needs a positive cycle count");
  if (children_.size() < 2)
    throw InvalidArgument("cooperative node needs at least two agents");
}

void CooperativeNode::run_for(const ToSPInstance &inst, std::int64_t slice,
                              EvalBudget &budget) {
  if (slice < 0)
    throw InvalidArgument("negative evaluation slice");
  EvalBudget local{0, std::min(slice, budget.remaining())};
  const std::int64_t per_cycle = slice / cycles_;
  const std::int64_t per_child =
      per_cycle / static_cast<std::int64_t>(children_.size());
  for (int cycle = 0; cycle < cycles_; ++cycle) {
    for (auto &child : children_)
      child->run_for(inst, per_child, local);
    synchronize();
    if (hooks_.on_sync)
      hooks_.on_sync(*this, cycle);
  }
  budget.used += local.used;
}

void CooperativeNode::synchronize() {
  const auto edges =
      topology_edges(topology_, static_cast<int>(children_.size()), rng_);
  if (!hooks_.migration)
    return;
  for (auto [i, j] : edges) {
    const Candidate sender = children_[i]->best();
    if (sender.fitness < children_[j]->best().fitness)
      children_[j]->inject(sender);
  }
}

Candidate CooperativeNode::best() const {
  Candidate best = children_.front()->best();
  for (std::size_t i = 1; i < children_.size(); ++i) {
    Candidate c = children_[i]->best();
    if (c.fitness < best.fitness)
      best = std::move(c);
  }
  return best;
}

Candidate CooperativeNode::worst() const {
  Candidate worst = children_.front()->worst();
  for (std::size_t i = 1; i < children_.size(); ++i) {
    Candidate c = children_[i]->worst();
    if (c.fitness > worst.fitness)
      worst = std::move(c);
  }
  return worst;
}

void CooperativeNode::inject(const Candidate &migrant) {
  std::size_t target = 0;
  Fitness worst = children_.front()->worst().fitness;
  for (std::size_t i = 1; i < children_.size(); ++i) {
    const Fitness f = children_[i]->worst().fitness;
    if (f > worst) {
      worst = f;
      target = i;
    }
  }
  children_[target]->inject(migrant);
}

std::vector<Candidate> CooperativeNode::pool() const {
  std::vector<Candidate> all;
  for (const auto &child : children_) {
    auto sub = child->pool();
    all.insert(all.end(), std::make_move_iterator(sub.begin()),
               std::make_move_iterator(sub.end()));
  }
  return all;
}

std::string CooperativeNode::name() const {
  std::string out = std::to_string(cycles_) + topology_code(topology_) + "(";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i)
      out += ',';
    out += children_[i]->name();
  }
  return out + ")";
}

std::unique_ptr<Agent> build_agent(const ArchitectureSpec &spec,
                                   const ToSPInstance &inst,
                                   std::uint64_t seed,
                                   const AgentParams &params,
                                   const CooperationHooks &hooks) {
  if (spec.is_leaf())
    return make_agent(*spec.leaf, inst, seed, params);
  if (spec.children.size() < 2)
    throw InvalidArgument("cooperative node needs at least two agents");
  std::vector<std::unique_ptr<Agent>> children;
  children.reserve(spec.children.size());
  for (std::size_t i = 0; i < spec.children.size(); ++i)
    children.push_back(build_agent(spec.children[i], inst,
                                   derive_seed(seed, i + 1), params, hooks));
  return std::make_unique<CooperativeNode>(spec.cycles, spec.topology,
                                           std::move(children),
                                           derive_seed(seed, 0), hooks);
}

std::int64_t child_slice(const ArchitectureSpec &node,
                         std::int64_t node_budget) {
  if (node.is_leaf())
    throw InvalidArgument("child_slice needs a cooperative node");
  return node_budget / node.cycles /
         static_cast<std::int64_t>(node.children.size());
}

namespace {
void check_budget_at(const ArchitectureSpec &spec, std::int64_t budget,
                     const std::string &path) {
  if (spec.is_leaf())
    return;
  const std::int64_t slice = child_slice(spec, budget);
  if (slice < 1)
    throw BudgetTooSmall("node " + path + " " + print_architecture(spec) +
                         " receives " + std::to_string(budget) +
                         " evaluations: per-agent slice floors to 0");
  for (std::size_t i = 0; i < spec.children.size(); ++i)
    check_budget_at(spec.children[i], slice,
                    path + "." + std::to_string(i + 1));
}
} // namespace

void check_budget(const ArchitectureSpec &spec, std::int64_t total_budget) {
  if (total_budget < 1)
    throw BudgetTooSmall("total budget must be at least one evaluation");
  check_budget_at(spec, total_budget, "root");
}

RunResult run(const ArchitectureSpec &spec, const ToSPInstance &inst,
              std::int64_t total_budget, std::uint64_t seed,
              const AgentParams &params, const CooperationHooks &hooks) {
  check_budget(spec, total_budget);
  auto root = build_agent(spec, inst, seed, params, hooks);
  EvalBudget budget{0, total_budget};
  root->run_for(inst, total_budget, budget);
  return {root->best(), budget.used};
}

} // namespace deepmemetic
