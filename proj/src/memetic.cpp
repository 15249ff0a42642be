#include <deepmemetic/agents.hpp>
#include <deepmemetic/operators.hpp>

#include <algorithm>

namespace deepmemetic {

MemeticAlgorithm::MemeticAlgorithm(int jobs, AgentKind local_search,
                                   std::uint64_t seed,
                                   const AgentParams &params)
    : SearchAgent(jobs), local_search_(local_search), params_(params),
      mutation_prob_(params.mutation_prob >= 0.0
                         ? params.mutation_prob
                         : default_mutation_rate(jobs)),
      rng_(seed) {
  if (local_search != AgentKind::HC && local_search != AgentKind::TS)
    throw InvalidArgument("memetic local search must be HC or TS");
  if (params.population_size < 2)
    throw InvalidArgument("population size must be at least 2");
  population_.reserve(params.population_size);
  for (int i = 0; i < params.population_size; ++i)
    population_.push_back({random_permutation(jobs, rng_), kUnevaluated});
}

std::size_t MemeticAlgorithm::best_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population_.size(); ++i)
    if (population_[i].fitness < population_[best].fitness)
      best = i;
  return best;
}

std::size_t MemeticAlgorithm::worst_index() const {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < population_.size(); ++i)
    if (population_[i].fitness > population_[worst].fitness)
      worst = i;
  return worst;
}

Candidate MemeticAlgorithm::best() const { return population_[best_index()]; }
Candidate MemeticAlgorithm::worst() const {
  return population_[worst_index()];
}

void MemeticAlgorithm::inject(const Candidate &migrant) {
  population_[worst_index()] = migrant;
}

void MemeticAlgorithm::accept_offspring(Candidate child) {
  offspring_.push_back(std::move(child));
  if (offspring_.size() + 1 < population_.size())
    return;
  // Elitist generational replacement: the best parent survives.
  Candidate elite = population_[best_index()];
  population_.clear();
  population_.push_back(std::move(elite));
  for (auto &c : offspring_)
    population_.push_back(std::move(c));
  offspring_.clear();
  ++generation_;
}

void MemeticAlgorithm::step(const ToSPInstance &inst, EvalBudget &budget) {
  while (init_cursor_ < population_.size() &&
         population_[init_cursor_].evaluated())
    ++init_cursor_;
  if (init_cursor_ < population_.size()) {
    auto &c = population_[init_cursor_++];
    c.fitness = fitness(inst, c.order, budget);
    return;
  }

  if (ls_) {
    ls_->step(inst, budget);
    ++ls_used_;
    if (ls_->finished() || ls_used_ >= params_.ls_evals) {
      Candidate improved = ls_->best();
      ls_.reset();
      accept_offspring(std::move(improved));
    }
    return;
  }

  const auto a = binary_tournament(population_, rng_);
  const auto b = binary_tournament(population_, rng_);
  Candidate child;
  if (std::bernoulli_distribution(params_.crossover_prob)(rng_))
    child.order = apx_crossover(population_[a].order, population_[b].order,
                                rng_);
  else
    child.order = population_[a].order;
  child.order = mutate(child.order, mutation_prob_, rng_);
  child.fitness = fitness(inst, child.order, budget);

  if (params_.ls_evals > 0 &&
      std::bernoulli_distribution(params_.ls_prob)(rng_)) {
    const auto ls_seed = rng_();
    ++local_searches_;
    ls_used_ = 0;
    if (local_search_ == AgentKind::HC)
      ls_ = std::make_unique<HillClimber>(
          std::move(child), ls_seed, HillClimber::OnStagnation::Finish,
          params_);
    else
      ls_ = std::make_unique<TabuSearch>(std::move(child), ls_seed, params_);
    return;
  }
  accept_offspring(std::move(child));
}

} // namespace deepmemetic
