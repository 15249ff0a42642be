#include <deepmemetic/agents.hpp>

#include <algorithm>
#include <utility>

namespace deepmemetic {

namespace {
int default_tenure(int jobs, const AgentParams &params) {
  return params.tabu_tenure >= 0 ? params.tabu_tenure : (jobs + 1) / 2;
}
} // namespace

TabuSearch::TabuSearch(int jobs, std::uint64_t seed, const AgentParams &params)
    : SearchAgent(jobs), rng_(seed),
      round_size_(params.neighborhood_factor * jobs),
      tenure_(default_tenure(jobs, params)) {
  current_.order = random_permutation(jobs, rng_);
  best_ = current_;
}

TabuSearch::TabuSearch(Candidate start, std::uint64_t seed,
                       const AgentParams &params)
    : SearchAgent(static_cast<int>(start.order.size())), rng_(seed),
      round_size_(params.neighborhood_factor * jobs_),
      tenure_(default_tenure(jobs_, params)), current_(std::move(start)) {
  best_ = current_;
}

bool TabuSearch::is_tabu(std::pair<int, int> move) const {
  return std::find(tabu_.begin(), tabu_.end(), move) != tabu_.end();
}

void TabuSearch::reset_round() {
  sampled_ = 0;
  round_best_ = Candidate{};
  round_move_ = {-1, -1};
}

void TabuSearch::step(const ToSPInstance &inst, EvalBudget &budget) {
  if (!current_.evaluated() || jobs_ < 2) {
    current_.fitness = fitness(inst, current_.order, budget);
    if (current_.fitness < best_.fitness)
      best_ = current_;
    return;
  }

  const auto move = sample_swap_pair(jobs_, rng_);
  Candidate neighbor{current_.order, kUnevaluated};
  std::swap(neighbor.order[move.first], neighbor.order[move.second]);
  neighbor.fitness = fitness(inst, neighbor.order, budget);
  ++sampled_;

  const bool aspiration = neighbor.fitness < best_.fitness;
  if (aspiration)
    best_ = neighbor;
  if ((aspiration || !is_tabu(move)) &&
      neighbor.fitness < round_best_.fitness) {
    round_best_ = std::move(neighbor);
    round_move_ = move;
  }

  if (sampled_ < round_size_)
    return;
  if (round_best_.evaluated()) {
    current_ = std::move(round_best_);
    if (tenure_ > 0) {
      tabu_.push_back(round_move_);
      while (static_cast<int>(tabu_.size()) > tenure_)
        tabu_.pop_front();
    }
  }
  reset_round();
}

void TabuSearch::inject(const Candidate &migrant) {
  best_ = migrant;
  current_ = migrant;
  reset_round();
}

} // namespace deepmemetic
