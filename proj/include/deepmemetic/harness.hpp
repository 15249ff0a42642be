#ifndef DEEPMEMETIC_HARNESS_HPP
#define DEEPMEMETIC_HARNESS_HPP

#include <deepmemetic/agents.hpp>
#include <deepmemetic/architecture.hpp>
#include <deepmemetic/instance.hpp>
#include <deepmemetic/stats.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace deepmemetic {

struct ExperimentConfig {
  std::vector<InstanceFamily> families = standard_families();
  int datasets_per_family = 5;
  int runs_per_dataset = 10;
  int phi = 100;
  std::vector<std::pair<std::string, ArchitectureSpec>> architectures;
  std::uint64_t master_seed = 0;
  AgentParams params;

  void validate() const;
};

// Config text format, one directive per line, '#' starts a comment:
//   datasets_per_family = 5
//   runs_per_dataset = 10
//   phi = 100
//   master_seed = 42
//   family = 4z10x9            (standard label)
//   family = 10 9 4 2 4        (n m C min max)
//   macro NAME = EXPR
//   arch NAME = EXPR
// Any family line replaces the default family list.
ExperimentConfig parse_experiment_config(const std::string &text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

/// phi * n * (m - C).
std::int64_t emax_for(const InstanceFamily &family, int phi);

std::uint64_t dataset_seed(std::uint64_t master_seed,
                           const std::string &label, int dataset);
std::uint64_t run_seed(std::uint64_t master_seed,
                       const std::string &architecture,
                       const std::string &label, int dataset, int run);

struct RunRecord {
  std::string architecture;
  std::string instance;
  int dataset = 0;
  int run = 0;
  std::uint64_t seed = 0;
  Fitness best_fitness = 0;
  std::int64_t evaluations = 0;
  double wall_time = 0.0;
  std::string status = "ok"; // otherwise the error message

  bool ok() const { return status == "ok"; }
};

/// Sort key (architecture, instance, dataset, run).
bool record_key_less(const RunRecord &a, const RunRecord &b);

inline const char *kRecordsHeader =
    "architecture,instance,dataset,run,seed,best_fitness,evaluations,"
    "wall_time,status";

std::string format_record(const RunRecord &r, bool with_wall_time = true);
std::vector<RunRecord> parse_records(const std::string &text);
std::vector<RunRecord> load_records(const std::filesystem::path &path);
void save_records(const std::vector<RunRecord> &records,
                  const std::filesystem::path &path);

struct ExperimentResult {
  std::vector<RunRecord> records; // sorted, every record in the file
  std::int64_t new_runs = 0;
  std::int64_t failed_runs = 0;
};

/// Thread count from DEEPMEMETIC_THREADS; 0 or unset means sequential.
int sweep_threads_from_env();

/// Runs every (architecture, family, dataset, run) cell not already present
/// in out_dir/records.csv, then rewrites records.csv in sorted order and
/// writes out_dir/summary.csv. Datasets are stored under out_dir/instances.
/// threads < 0 reads DEEPMEMETIC_THREADS.
ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                const std::filesystem::path &out_dir,
                                int threads = -1);

/// Rows per instance with a "mean" line and an "sd" line, one column per
/// architecture. Failed runs are excluded.
std::string format_summary(const std::vector<RunRecord> &records);

struct AnalysisReport {
  std::vector<std::string> algorithms;
  std::vector<std::string> instances;
  ResultMatrix means; // instances x algorithms
  RankTable ranks;
  Eigen::Index control = 0;
  double alpha = 0.05;
  bool quade_defined = false;
  QuadeResult quade;
  std::vector<HolmRow> holm;
  std::vector<BoxSummary> rank_distribution; // per algorithm
};

/// Per-instance means of successful runs ranked per instance, then Quade
/// and Holm against `control`. Throws IncompleteGrid when an
/// (algorithm, instance) cell has no successful run.
AnalysisReport analyze(const std::vector<RunRecord> &records,
                       const std::string &control, double alpha);

/// i, strategy, z, p, alpha_over_i, rejected; i = 1 is the largest p.
std::string format_holm_csv(const AnalysisReport &report);
std::string format_quade_csv(const AnalysisReport &report);
std::string format_rank_distribution_csv(const AnalysisReport &report);
std::string format_mean_ranks_csv(const AnalysisReport &report);

/// Writes holm.csv, quade.csv, rank_distribution.csv and mean_ranks.csv.
void write_report(const AnalysisReport &report,
                  const std::filesystem::path &out_dir);

} // namespace deepmemetic

#endif // DEEPMEMETIC_HARNESS_HPP
