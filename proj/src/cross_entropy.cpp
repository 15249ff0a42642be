#include <deepmemetic/agents.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace deepmemetic {

CrossEntropy::CrossEntropy(int jobs, int tables, std::uint64_t seed,
                           const AgentParams &params)
    : SearchAgent(jobs), smoothing_(params.pmf_smoothing),
      floor_(params.pmf_floor) {
  if (tables < 1)
    throw InvalidArgument("cross-entropy needs at least one table");
  samples_per_table_ = std::max(1, jobs * jobs / tables);
  elites_ = std::clamp(
      static_cast<int>(std::ceil(params.elite_fraction * samples_per_table_ -
                                 1e-9)),
      1, samples_per_table_);

  const double uniform = 1.0 / jobs;
  for (int t = 0; t < tables; ++t) {
    pmfs_.push_back(PmfMatrix::Constant(jobs, jobs, uniform));
    rngs_.emplace_back(derive_seed(seed, static_cast<std::uint64_t>(t)));
  }
  batch_.reserve(samples_per_table_);
  // Pool placeholder until the first sample is scored.
  Rng init(derive_seed(seed, 0xce));
  best_.order = random_permutation(jobs, init);
}

JobSequence CrossEntropy::sample(const PmfMatrix &pmf, Rng &rng) {
  const int n = static_cast<int>(pmf.rows());
  std::vector<int> unused(n);
  std::iota(unused.begin(), unused.end(), 0);
  JobSequence seq;
  seq.reserve(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < n; ++k) {
    double total = 0.0;
    for (int job : unused)
      total += pmf(k, job);
    std::size_t pick = unused.size() - 1;
    if (total > 0.0) {
      double u = unit(rng) * total;
      for (std::size_t idx = 0; idx < unused.size(); ++idx) {
        u -= pmf(k, unused[idx]);
        if (u < 0.0) {
          pick = idx;
          break;
        }
      }
    } else {
      pick = std::uniform_int_distribution<std::size_t>(0, unused.size() -
                                                            1)(rng);
    }
    seq.push_back(unused[pick]);
    unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return seq;
}

void CrossEntropy::step(const ToSPInstance &inst, EvalBudget &budget) {
  Candidate c;
  c.order = sample(pmfs_[active_], rngs_[active_]);
  c.fitness = fitness(inst, c.order, budget);
  if (c.fitness < best_.fitness)
    best_ = c;
  batch_.push_back(std::move(c));
  if (static_cast<int>(batch_.size()) == samples_per_table_) {
    update_table(active_);
    batch_.clear();
    active_ = (active_ + 1) % tables();
  }
}

void CrossEntropy::update_table(int table) {
  std::vector<std::size_t> idx(batch_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a,
                                                   std::size_t b) {
    return batch_[a].fitness < batch_[b].fitness;
  });

  const int n = jobs_;
  PmfMatrix freq = PmfMatrix::Zero(n, n);
  const double w = 1.0 / elites_;
  for (int e = 0; e < elites_; ++e) {
    const auto &order = batch_[idx[e]].order;
    for (int k = 0; k < n; ++k)
      freq(k, order[k]) += w;
  }

  PmfMatrix &p = pmfs_[table];
  p = (1.0 - smoothing_) * p + smoothing_ * freq;
  p = p.cwiseMax(floor_);
  p = p.array().colwise() / p.rowwise().sum().array();
  ++updates_;
}

void CrossEntropy::inject(const Candidate &migrant) {
  if (migrant.fitness < best_.fitness)
    best_ = migrant;
}

} // namespace deepmemetic
