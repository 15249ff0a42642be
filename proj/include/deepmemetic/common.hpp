#ifndef DEEPMEMETIC_COMMON_HPP
#define DEEPMEMETIC_COMMON_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace deepmemetic {

/// Job order; entry k is the (0-based) job processed at step k.
using JobSequence = std::vector<int>;

/// Number of tool switches. Lower is better.
using Fitness = std::int64_t;

/// Fitness of a pool member that has not been evaluated yet. Compares worse
/// than every real fitness, so migration and Best/Worst need no special case.
inline constexpr Fitness kUnevaluated = std::numeric_limits<Fitness>::max();

using Rng = std::mt19937_64;

struct Candidate {
  JobSequence order;
  Fitness fitness = kUnevaluated;

  bool evaluated() const { return fitness != kUnevaluated; }
};

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the `index`-th substream below `parent`.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// FNV-1a, used to fold names into seeds.
inline std::uint64_t hash_string(const std::string &s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool is_permutation_of_n(const JobSequence &seq, int n);

JobSequence random_permutation(int n, Rng &rng);

// Error hierarchy. Every failure the library reports is a deepmemetic::Error.

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        message_(what), line_(line), column_(column) {}
  /// Description without the location suffix.
  const std::string &message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  std::string message_;
  int line_;
  int column_;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class InfeasibleFamily : public Error {
public:
  using Error::Error;
};

class BudgetExhausted : public Error {
public:
  BudgetExhausted() : Error("evaluation budget exhausted") {}
};

class SizeGuard : public Error {
public:
  using Error::Error;
};

class BudgetTooSmall : public Error {
public:
  using Error::Error;
};

class DegenerateStatistic : public Error {
public:
  using Error::Error;
};

class IncompleteGrid : public Error {
public:
  IncompleteGrid(const std::string &what, std::vector<std::string> missing)
      : Error(what), missing_(std::move(missing)) {}
  const std::vector<std::string> &missing() const { return missing_; }

private:
  std::vector<std::string> missing_;
};

} // namespace deepmemetic

#endif // DEEPMEMETIC_COMMON_HPP
