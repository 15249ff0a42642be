#ifndef DEEPMEMETIC_INSTANCE_HPP
#define DEEPMEMETIC_INSTANCE_HPP

#include <deepmemetic/common.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace deepmemetic {

/// m x n 0/1 matrix; entry (i, j) is set iff tool i is required by job j.
using RequirementMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A uniform tool switching instance: magazine capacity plus the tool
/// requirement matrix. Construction validates the instance invariants
/// (capacity < m, every job needs between 1 and capacity tools).
class ToSPInstance {
public:
  ToSPInstance(int capacity, RequirementMatrix requirements,
               std::string label = {});

  int jobs() const { return static_cast<int>(requirements_.cols()); }
  int tools() const { return static_cast<int>(requirements_.rows()); }
  int capacity() const { return capacity_; }
  const RequirementMatrix &requirements() const { return requirements_; }
  const std::string &label() const { return label_; }

  bool requires_tool(int tool, int job) const {
    return requirements_(tool, job) != 0;
  }

  /// Sorted tool indices required by `job`.
  const std::vector<int> &tools_of(int job) const { return job_tools_[job]; }

  friend bool operator==(const ToSPInstance &a, const ToSPInstance &b) {
    return a.capacity_ == b.capacity_ && a.label_ == b.label_ &&
           a.requirements_.rows() == b.requirements_.rows() &&
           a.requirements_.cols() == b.requirements_.cols() &&
           a.requirements_ == b.requirements_;
  }

private:
  int capacity_;
  RequirementMatrix requirements_;
  std::string label_;
  std::vector<std::vector<int>> job_tools_;
};

/// Random benchmark family: n jobs over m tools with a magazine of
/// `capacity` slots; each job needs between min_tools and max_tools tools.
struct InstanceFamily {
  int jobs = 0;
  int tools = 0;
  int capacity = 0;
  int min_tools = 0;
  int max_tools = 0;

  /// Label in the `C z n x m` file-name convention, e.g. "4z10x9".
  std::string label() const;
  void validate() const;

  friend bool operator==(const InstanceFamily &,
                         const InstanceFamily &) = default;
};

/// The sixteen benchmark families (n, m, C, min, max) used in the
/// experiments.
const std::vector<InstanceFamily> &standard_families();

/// Looks up a standard family by its label ("4z10x9"); throws on unknown.
InstanceFamily family_by_label(const std::string &label);

/// Maximum number of resampling rounds before generation gives up.
inline constexpr int kMaxResampleRounds = 10000;

/// Draws a random instance: every job's tool count is uniform on
/// [min_tools, max_tools], its tools uniform without replacement. Whenever one
/// job's tool set is contained in another's, both jobs are redrawn; a random
/// job is redrawn while some tool is unused. Throws InfeasibleFamily after
/// kMaxResampleRounds rounds.
ToSPInstance generate_dataset(const InstanceFamily &family,
                              std::uint64_t seed);

/// True iff the tool set of job `a` is a (proper or equal) subset of job b's.
bool job_covered_by(const ToSPInstance &inst, int a, int b);

// Text format: "n m C" header, then m rows of n 0/1 symbols. Lines starting
// with '#' are comments; "# label: NAME" carries the instance label.

ToSPInstance parse_instance(const std::string &text,
                            const std::string &default_label = {});
std::string format_instance(const ToSPInstance &inst);

ToSPInstance load_instance(const std::filesystem::path &path);
void save_instance(const ToSPInstance &inst,
                   const std::filesystem::path &path);

} // namespace deepmemetic

#endif // DEEPMEMETIC_INSTANCE_HPP
