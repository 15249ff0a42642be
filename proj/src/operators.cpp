#include <deepmemetic/operators.hpp>

#include <algorithm>
#include <numeric>

namespace deepmemetic {

bool is_permutation_of_n(const JobSequence &seq, int n) {
  if (static_cast<int>(seq.size()) != n)
    return false;
  std::vector<char> seen(n, 0);
  for (int job : seq) {
    if (job < 0 || job >= n || seen[job])
      return false;
    seen[job] = 1;
  }
  return true;
}

JobSequence random_permutation(int n, Rng &rng) {
  JobSequence seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  std::shuffle(seq.begin(), seq.end(), rng);
  return seq;
}

SwapNeighbors::iterator::iterator(const JobSequence *base, int i, int j)
    : base_(base), i_(i), j_(j) {
  materialize();
}

void SwapNeighbors::iterator::materialize() {
  const int n = static_cast<int>(base_->size());
  if (i_ >= n - 1)
    return;
  current_ = *base_;
  std::swap(current_[i_], current_[j_]);
}

SwapNeighbors::iterator &SwapNeighbors::iterator::operator++() {
  const int n = static_cast<int>(base_->size());
  if (++j_ >= n) {
    ++i_;
    j_ = i_ + 1;
  }
  if (i_ >= n - 1) {
    i_ = std::max(n - 1, 0);
    j_ = std::max(n, 1);
  }
  materialize();
  return *this;
}

SwapNeighbors::SwapNeighbors(JobSequence seq) : seq_(std::move(seq)) {}

SwapNeighbors::iterator SwapNeighbors::begin() const {
  const int n = static_cast<int>(seq_.size());
  if (n < 2)
    return end();
  return iterator(&seq_, 0, 1);
}

SwapNeighbors::iterator SwapNeighbors::end() const {
  const int n = static_cast<int>(seq_.size());
  return iterator(&seq_, std::max(n - 1, 0), std::max(n, 1));
}

std::size_t SwapNeighbors::size() const {
  const std::size_t n = seq_.size();
  return n < 2 ? 0 : n * (n - 1) / 2;
}

SwapNeighbors swap_neighbors(JobSequence seq) {
  return SwapNeighbors(std::move(seq));
}

int hamming_distance(const JobSequence &a, const JobSequence &b) {
  if (a.size() != b.size())
    throw InvalidArgument("hamming distance needs equal lengths");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += a[i] != b[i];
  return d;
}

bool block_move_valid(const BlockMove &mv, int n) {
  return mv.length >= 1 && mv.start >= 1 && mv.start <= n - 2 * mv.length &&
         mv.insert >= mv.start + mv.length && mv.insert <= n - mv.length;
}

BlockMove sample_block_move(int n, Rng &rng) {
  if (n < 3)
    throw InvalidArgument("block move needs at least 3 positions (n=" +
                          std::to_string(n) + ")");
  // b_s ranges over 1..n-2*b_l, so b_l must not exceed (n-1)/2.
  const int max_length = std::min(n / 2, (n - 1) / 2);
  BlockMove mv;
  mv.length = std::uniform_int_distribution<int>(1, max_length)(rng);
  mv.start = std::uniform_int_distribution<int>(1, n - 2 * mv.length)(rng);
  mv.insert = std::uniform_int_distribution<int>(mv.start + mv.length,
                                                 n - mv.length)(rng);
  return mv;
}

JobSequence apply_block_move(const JobSequence &seq, const BlockMove &mv) {
  const int n = static_cast<int>(seq.size());
  if (!block_move_valid(mv, n))
    throw InvalidArgument("invalid block move (length=" +
                          std::to_string(mv.length) +
                          ", start=" + std::to_string(mv.start) +
                          ", insert=" + std::to_string(mv.insert) +
                          ") for n=" + std::to_string(n));
  JobSequence out = seq;
  std::swap_ranges(out.begin() + (mv.start - 1),
                   out.begin() + (mv.start - 1 + mv.length),
                   out.begin() + (mv.insert - 1));
  return out;
}

JobSequence apx_crossover(const JobSequence &p1, const JobSequence &p2,
                          bool first_leads) {
  if (p1.size() != p2.size())
    throw InvalidArgument("APX parents must have equal length");
  const std::size_t n = p1.size();
  const JobSequence &lead = first_leads ? p1 : p2;
  const JobSequence &follow = first_leads ? p2 : p1;
  JobSequence child;
  child.reserve(n);
  std::vector<char> used(n, 0);
  auto take = [&](int job) {
    if (!used[job]) {
      used[job] = 1;
      child.push_back(job);
    }
  };
  for (std::size_t i = 0; i < n && child.size() < n; ++i) {
    take(lead[i]);
    take(follow[i]);
  }
  return child;
}

JobSequence apx_crossover(const JobSequence &p1, const JobSequence &p2,
                          Rng &rng) {
  const bool first_leads = std::bernoulli_distribution(0.5)(rng);
  return apx_crossover(p1, p2, first_leads);
}

JobSequence mutate(const JobSequence &seq, double p_mut, Rng &rng) {
  if (p_mut < 0.0 || p_mut > 1.0)
    throw InvalidArgument("mutation probability must lie in [0, 1]");
  if (seq.size() < 3 || p_mut == 0.0)
    return seq;
  if (!std::bernoulli_distribution(p_mut)(rng))
    return seq;
  return apply_block_move(seq, sample_block_move(static_cast<int>(seq.size()),
                                                 rng));
}

std::size_t binary_tournament(std::span<const Candidate> pool, Rng &rng) {
  if (pool.empty())
    throw InvalidArgument("tournament on an empty pool");
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const std::size_t a = pick(rng);
  const std::size_t b = pick(rng);
  return pool[b].fitness < pool[a].fitness ? b : a;
}

} // namespace deepmemetic
