#include <deepmemetic/agents.hpp>

#include <utility>

namespace deepmemetic {

HillClimber::HillClimber(int jobs, std::uint64_t seed,
                         const AgentParams &params)
    : SearchAgent(jobs), rng_(seed), mode_(OnStagnation::Restart),
      round_size_(params.neighborhood_factor * jobs) {
  current_.order = random_permutation(jobs, rng_);
  best_ = current_;
}

HillClimber::HillClimber(Candidate start, std::uint64_t seed,
                         OnStagnation mode, const AgentParams &params)
    : SearchAgent(static_cast<int>(start.order.size())), rng_(seed),
      mode_(mode), round_size_(params.neighborhood_factor * jobs_),
      current_(std::move(start)) {
  best_ = current_;
}

void HillClimber::record(const Candidate &c) {
  if (c.fitness < best_.fitness)
    best_ = c;
}

void HillClimber::reset_round() {
  round_best_ = Candidate{};
  round_fitness_.clear();
}

void HillClimber::step(const ToSPInstance &inst, EvalBudget &budget) {
  if (!current_.evaluated() || jobs_ < 2) {
    // A single job has no neighbours; re-scoring keeps one step = one
    // evaluation.
    current_.fitness = fitness(inst, current_.order, budget);
    record(current_);
    return;
  }

  auto [i, j] = sample_swap_pair(jobs_, rng_);
  Candidate neighbor{current_.order, kUnevaluated};
  std::swap(neighbor.order[i], neighbor.order[j]);
  neighbor.fitness = fitness(inst, neighbor.order, budget);
  record(neighbor);
  round_fitness_.push_back(neighbor.fitness);
  if (neighbor.fitness < round_best_.fitness)
    round_best_ = std::move(neighbor);

  if (static_cast<int>(round_fitness_.size()) < round_size_)
    return;

  if (round_best_.fitness < current_.fitness) {
    current_ = std::move(round_best_);
  } else {
    ++stagnations_;
    if (observer_)
      observer_(current_.fitness, round_fitness_);
    if (mode_ == OnStagnation::Restart)
      current_ = Candidate{random_permutation(jobs_, rng_), kUnevaluated};
    else
      finished_ = true;
  }
  reset_round();
}

void HillClimber::inject(const Candidate &migrant) {
  best_ = migrant;
  current_ = migrant;
  reset_round();
}

} // namespace deepmemetic
