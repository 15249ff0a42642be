#ifndef DEEPMEMETIC_OPERATORS_HPP
#define DEEPMEMETIC_OPERATORS_HPP

#include <deepmemetic/common.hpp>

#include <cstddef>
#include <iterator>
#include <span>
#include <utility>

namespace deepmemetic {

/// Lazy range over the swap neighbourhood of a sequence: every sequence
/// obtained by exchanging one position pair (i < j), in lexicographic pair
/// order. Yields n(n-1)/2 neighbours.
class SwapNeighbors {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = JobSequence;
    using difference_type = std::ptrdiff_t;
    using pointer = const JobSequence *;
    using reference = const JobSequence &;

    iterator() = default;
    iterator(const JobSequence *base, int i, int j);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator &operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    std::pair<int, int> positions() const { return {i_, j_}; }

    friend bool operator==(const iterator &a, const iterator &b) {
      return a.i_ == b.i_ && a.j_ == b.j_;
    }

  private:
    void materialize();

    const JobSequence *base_ = nullptr;
    int i_ = 0;
    int j_ = 0;
    JobSequence current_;
  };

  explicit SwapNeighbors(JobSequence seq);

  iterator begin() const;
  iterator end() const;
  std::size_t size() const;

private:
  JobSequence seq_;
};

SwapNeighbors swap_neighbors(JobSequence seq);

int hamming_distance(const JobSequence &a, const JobSequence &b);

/// Random block swap with 1-based coordinates: block length, start of the
/// first block, start of the second block.
struct BlockMove {
  int length = 0;
  int start = 0;
  int insert = 0;

  friend bool operator==(const BlockMove &, const BlockMove &) = default;
};

/// True iff 1 <= length, 1 <= start <= n - 2*length and
/// start + length <= insert <= n - length.
bool block_move_valid(const BlockMove &mv, int n);

/// Draws length, then start, then insertion point, each uniformly on its
/// range given the previous draws. Lengths that leave no valid start are
/// excluded. Throws InvalidArgument when n < 3.
BlockMove sample_block_move(int n, Rng &rng);

/// Exchanges the two blocks. Throws InvalidArgument on an invalid move.
JobSequence apply_block_move(const JobSequence &seq, const BlockMove &mv);

/// Alternating position crossover: scans p1[0], p2[0], p1[1], p2[1], ...
/// (or starting from p2 when `first_leads` is false) and keeps the first
/// occurrence of every job.
JobSequence apx_crossover(const JobSequence &p1, const JobSequence &p2,
                          bool first_leads);

/// As above with the leading parent chosen uniformly.
JobSequence apx_crossover(const JobSequence &p1, const JobSequence &p2,
                          Rng &rng);

/// Applies one random block move with probability p_mut. Sequences shorter
/// than 3 admit no block move and are returned unchanged.
JobSequence mutate(const JobSequence &seq, double p_mut, Rng &rng);

/// Default mutation rate 1/length.
inline double default_mutation_rate(int length) {
  return length > 0 ? 1.0 / length : 0.0;
}

/// Binary tournament with replacement; the lower fitness wins, ties go to
/// the first draw. Returns the index of the winner. Throws on empty pools.
std::size_t binary_tournament(std::span<const Candidate> pool, Rng &rng);

} // namespace deepmemetic

#endif // DEEPMEMETIC_OPERATORS_HPP
