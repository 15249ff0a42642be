#ifndef DEEPMEMETIC_AGENTS_HPP
#define DEEPMEMETIC_AGENTS_HPP

#include <deepmemetic/common.hpp>
#include <deepmemetic/evaluator.hpp>
#include <deepmemetic/instance.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace deepmemetic {

/// Anything that owns a solution pool and can search for a number of
/// evaluations: a basic metaheuristic or a cooperative node.
class Agent {
public:
  virtual ~Agent() = default;

  /// Continues the search for at most `slice` evaluations, charged to
  /// `budget`; stops early once `budget` is exhausted. State persists
  /// across calls.
  virtual void run_for(const ToSPInstance &inst, std::int64_t slice,
                       EvalBudget &budget) = 0;

  virtual Candidate best() const = 0;
  virtual Candidate worst() const = 0;

  /// Accepts a migrant in place of the worst pool member.
  virtual void inject(const Candidate &migrant) = 0;

  virtual std::vector<Candidate> pool() const = 0;
  virtual std::string name() const = 0;
};

inline Candidate best_of(const Agent &agent) { return agent.best(); }
inline Candidate worst_of(const Agent &agent) { return agent.worst(); }
inline void inject(Agent &agent, const Candidate &migrant) {
  agent.inject(migrant);
}
inline void run_for(Agent &agent, const ToSPInstance &inst,
                    std::int64_t slice, EvalBudget &budget) {
  agent.run_for(inst, slice, budget);
}

enum class AgentKind { HC, TS, CE, CEM, MAHC, MATS };

std::string to_string(AgentKind kind);
std::optional<AgentKind> agent_kind_from_string(const std::string &name);
const std::vector<AgentKind> &all_agent_kinds();

/// Tunables of the basic metaheuristics. Negative values select the
/// size-dependent default noted next to the field.
struct AgentParams {
  int neighborhood_factor = 4; // HC/TS sample factor * n swap neighbours
  int tabu_tenure = -1;        // ceil(n / 2)

  double elite_fraction = 0.01; // rho
  double pmf_smoothing = 0.7;
  double pmf_floor = 1e-6;
  int cem_pmfs = 4;

  int population_size = 30;
  double crossover_prob = 1.0;
  double mutation_prob = -1.0; // 1 / n
  double ls_prob = 0.01;
  int ls_evals = 200;
};

/// Basic metaheuristic driven one evaluation at a time. Every step() charges
/// exactly one evaluation, which keeps slice accounting exact at any
/// granularity.
class SearchAgent : public Agent {
public:
  explicit SearchAgent(int jobs) : jobs_(jobs) {}

  void run_for(const ToSPInstance &inst, std::int64_t slice,
               EvalBudget &budget) override;

  /// One evaluation's worth of search.
  virtual void step(const ToSPInstance &inst, EvalBudget &budget) = 0;

  /// Local searches embedded in a memetic algorithm end on stagnation.
  virtual bool finished() const { return false; }

  virtual AgentKind kind() const = 0;
  std::string name() const override { return to_string(kind()); }

  int jobs() const { return jobs_; }

protected:
  int jobs_;
};

std::unique_ptr<SearchAgent> make_agent(AgentKind kind,
                                        const ToSPInstance &inst,
                                        std::uint64_t seed,
                                        const AgentParams &params = {});

/// Samples a position pair (i < j) uniformly.
std::pair<int, int> sample_swap_pair(int n, Rng &rng);

/// Hill climbing over a random sample of the swap neighbourhood. Moves to
/// the best sampled neighbour when it strictly improves; otherwise the
/// search has stagnated and either restarts from a random sequence or, as a
/// memetic local search, finishes.
class HillClimber : public SearchAgent {
public:
  enum class OnStagnation { Restart, Finish };

  /// Called on stagnation with the current fitness and the fitness of every
  /// neighbour sampled in the failed round.
  using StagnationObserver =
      std::function<void(Fitness current, std::span<const Fitness> sampled)>;

  HillClimber(int jobs, std::uint64_t seed, const AgentParams &params = {});
  HillClimber(Candidate start, std::uint64_t seed, OnStagnation mode,
              const AgentParams &params = {});

  void step(const ToSPInstance &inst, EvalBudget &budget) override;
  bool finished() const override { return finished_; }
  AgentKind kind() const override { return AgentKind::HC; }

  Candidate best() const override { return best_; }
  Candidate worst() const override { return best_; }
  void inject(const Candidate &migrant) override;
  std::vector<Candidate> pool() const override { return {best_}; }

  const Candidate &current() const { return current_; }
  int stagnations() const { return stagnations_; }
  void set_stagnation_observer(StagnationObserver obs) {
    observer_ = std::move(obs);
  }

private:
  void record(const Candidate &c);
  void reset_round();

  Rng rng_;
  OnStagnation mode_;
  int round_size_;
  Candidate current_;
  Candidate best_;
  Candidate round_best_;
  std::vector<Fitness> round_fitness_;
  int stagnations_ = 0;
  bool finished_ = false;
  StagnationObserver observer_;
};

/// Tabu search over a random sample of the swap neighbourhood. Moves to the
/// best admissible sampled neighbour (non-tabu, or tabu but better than the
/// best so far) and makes the swapped position pair tabu (FIFO).
class TabuSearch : public SearchAgent {
public:
  TabuSearch(int jobs, std::uint64_t seed, const AgentParams &params = {});
  TabuSearch(Candidate start, std::uint64_t seed,
             const AgentParams &params = {});

  void step(const ToSPInstance &inst, EvalBudget &budget) override;
  AgentKind kind() const override { return AgentKind::TS; }

  Candidate best() const override { return best_; }
  Candidate worst() const override { return best_; }
  void inject(const Candidate &migrant) override;
  std::vector<Candidate> pool() const override { return {best_}; }

  const Candidate &current() const { return current_; }
  const std::deque<std::pair<int, int>> &tabu_list() const { return tabu_; }
  int tenure() const { return tenure_; }

private:
  bool is_tabu(std::pair<int, int> move) const;
  void reset_round();

  Rng rng_;
  int round_size_;
  int tenure_;
  int sampled_ = 0;
  Candidate current_;
  Candidate best_;
  Candidate round_best_;
  std::pair<int, int> round_move_{-1, -1};
  std::deque<std::pair<int, int>> tabu_;
};

/// Position x job probability table, row-stochastic.
using PmfMatrix = Eigen::MatrixXd;

/// Cross-entropy method over permutations with one (CE) or several (CEM)
/// probability tables. Each table draws its share of the n^2 samples per
/// iteration and is re-estimated from its own elite fraction.
class CrossEntropy : public SearchAgent {
public:
  CrossEntropy(int jobs, int tables, std::uint64_t seed,
               const AgentParams &params = {});

  void step(const ToSPInstance &inst, EvalBudget &budget) override;
  AgentKind kind() const override {
    return pmfs_.size() == 1 ? AgentKind::CE : AgentKind::CEM;
  }

  Candidate best() const override { return best_; }
  Candidate worst() const override { return best_; }
  /// Adopts the migrant as best-so-far when it is better. The tables are
  /// left untouched.
  void inject(const Candidate &migrant) override;
  std::vector<Candidate> pool() const override { return {best_}; }

  int tables() const { return static_cast<int>(pmfs_.size()); }
  const PmfMatrix &pmf(int table) const { return pmfs_[table]; }
  int samples_per_table() const { return samples_per_table_; }
  int elites_per_table() const { return elites_; }
  std::int64_t updates() const { return updates_; }

  /// Draws a permutation position by position, each job from the row
  /// restricted to the jobs still unused.
  static JobSequence sample(const PmfMatrix &pmf, Rng &rng);

private:
  void update_table(int table);

  double smoothing_;
  double floor_;
  int samples_per_table_;
  int elites_;
  int active_ = 0;
  std::int64_t updates_ = 0;
  std::vector<PmfMatrix> pmfs_;
  std::vector<Rng> rngs_;
  std::vector<Candidate> batch_;
  Candidate best_;
};

/// Elitist generational memetic algorithm: binary tournament, APX
/// crossover, block-swap mutation, and with probability ls_prob a local
/// search (HC or TS) of at most ls_evals evaluations whose result replaces
/// the offspring. The best parent survives into the next generation.
class MemeticAlgorithm : public SearchAgent {
public:
  MemeticAlgorithm(int jobs, AgentKind local_search, std::uint64_t seed,
                   const AgentParams &params = {});

  void step(const ToSPInstance &inst, EvalBudget &budget) override;
  AgentKind kind() const override {
    return local_search_ == AgentKind::HC ? AgentKind::MAHC : AgentKind::MATS;
  }

  Candidate best() const override;
  Candidate worst() const override;
  void inject(const Candidate &migrant) override;
  std::vector<Candidate> pool() const override { return population_; }

  std::int64_t generation() const { return generation_; }
  std::int64_t local_searches() const { return local_searches_; }

private:
  std::size_t best_index() const;
  std::size_t worst_index() const;
  void accept_offspring(Candidate child);

  AgentKind local_search_;
  AgentParams params_;
  double mutation_prob_;
  Rng rng_;
  std::vector<Candidate> population_;
  std::size_t init_cursor_ = 0;
  std::vector<Candidate> offspring_;
  std::unique_ptr<SearchAgent> ls_;
  int ls_used_ = 0;
  std::int64_t generation_ = 0;
  std::int64_t local_searches_ = 0;
};

} // namespace deepmemetic

#endif // DEEPMEMETIC_AGENTS_HPP
