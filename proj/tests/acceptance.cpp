// Acceptance checks: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails.

#include "support.hpp"

#include <deepmemetic/architecture.hpp>
#include <deepmemetic/cooperation.hpp>
#include <deepmemetic/evaluator.hpp>
#include <deepmemetic/harness.hpp>
#include <deepmemetic/instance.hpp>
#include <deepmemetic/operators.hpp>
#include <deepmemetic/stats.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace deepmemetic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string &name,
            const std::function<Outcome()> &check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  if (!o.pass)
    ++failures;
  std::printf("%s [%2d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id,
              name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

// Random tree of exactly the given depth (0 = node of leaves).
ArchitectureSpec random_tree(int depth, int max_arity, int max_cycles,
                             Rng &rng) {
  std::uniform_int_distribution<int> arity(2, max_arity);
  std::uniform_int_distribution<int> cycles(1, max_cycles);
  std::uniform_int_distribution<int> topo(0, 2);
  std::uniform_int_distribution<int> kind(0, 5);
  const int n = arity(rng);
  std::vector<ArchitectureSpec> children;
  const int deep = std::uniform_int_distribution<int>(0, n - 1)(rng);
  for (int i = 0; i < n; ++i) {
    if (depth > 0 && (i == deep || rng() % 3 == 0)) {
      const int d = i == deep ? depth - 1
                              : std::uniform_int_distribution<int>(
                                    0, depth - 1)(rng);
      children.push_back(random_tree(d, max_arity, max_cycles, rng));
    } else {
      children.push_back(
          ArchitectureSpec::Leaf(static_cast<AgentKind>(kind(rng))));
    }
  }
  return ArchitectureSpec::Node(cycles(rng), static_cast<Topology>(topo(rng)),
                                std::move(children));
}

// Random expression tree up to the given depth; the root may be a leaf.
ArchitectureSpec random_expression(int max_depth, Rng &rng) {
  const int d = std::uniform_int_distribution<int>(-1, max_depth)(rng);
  if (d < 0)
    return ArchitectureSpec::Leaf(
        static_cast<AgentKind>(std::uniform_int_distribution<int>(0, 5)(rng)));
  return random_tree(d, 5, 20, rng);
}

Outcome ktns_optimality() {
  Rng rng(20240601);
  long long sequences = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 6)(rng);
    const int m = std::uniform_int_distribution<int>(5, 10)(rng);
    const int c = std::uniform_int_distribution<int>(2, 4)(rng);
    const auto inst = testsupport::random_instance(n, m, c, rng);
    JobSequence seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    do {
      const Fitness k = ktns_switches(inst, seq);
      const Fitness d = exact_min_switches(inst, seq);
      if (k != d)
        return {false, "instance " + std::to_string(trial) + ": ktns " +
                           std::to_string(k) + " vs exact " +
                           std::to_string(d)};
      ++sequences;
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
  return {true, "200 instances, " + std::to_string(sequences) +
                    " sequences, 0 mismatches"};
}

Outcome worked_fixtures() {
  using testsupport::make_instance;
  const auto chain = make_instance(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  const Fitness a = ktns_switches(chain, {0, 1, 2});
  const auto evict = make_instance(3, 2, {{0, 1}, {2}, {0}});
  const auto plan = ktns(evict, {0, 1, 2});
  const bool ok = a == 2 && plan.switches == 1 &&
                  plan.configs[1] == std::vector<int>{0, 2};
  return {ok, "chain " + std::to_string(a) + " (want 2), eviction " +
                  std::to_string(plan.switches) +
                  " (want 1, tool 2 removed)"};
}

Outcome budget_conservation() {
  Rng rng(77);
  const std::vector<std::string> families{"4z10x9", "6z10x15", "6z15x12",
                                          "8z20x15"};
  int depth_count[3] = {0, 0, 0};
  for (int t = 0; t < 50; ++t) {
    const int d = t % 3;
    const auto fam = family_by_label(families[rng() % families.size()]);
    const auto inst = generate_dataset(fam, rng());
    ArchitectureSpec spec;
    std::int64_t budget = 0;
    for (;;) {
      spec = random_tree(d, 3, 5, rng);
      budget = std::uniform_int_distribution<std::int64_t>(
          500, emax_for(fam, 100))(rng);
      try {
        check_budget(spec, budget);
        break;
      } catch (const BudgetTooSmall &) {
      }
    }
    ++depth_count[depth(spec)];
    const std::uint64_t seed = rng();
    const RunResult r1 = run(spec, inst, budget, seed);
    const RunResult r2 = run(spec, inst, budget, seed);
    if (r1.evaluations > budget)
      return {false, print_architecture(spec) + " used " +
                         std::to_string(r1.evaluations) + " > " +
                         std::to_string(budget)};
    if (r1.evaluations != r2.evaluations ||
        r1.best.fitness != r2.best.fitness || r1.best.order != r2.best.order)
      return {false, print_architecture(spec) + " is not reproducible"};
  }
  return {true, "50 triples (depth 0/1/2: " + std::to_string(depth_count[0]) +
                    "/" + std::to_string(depth_count[1]) + "/" +
                    std::to_string(depth_count[2]) +
                    "), all within budget and identical on re-run"};
}

Outcome broadcast_sync() {
  Rng rng(5);
  int syncs = 0, violations = 0;
  CooperationHooks hooks;
  hooks.on_sync = [&](const CooperativeNode &node, int) {
    if (node.topology() != Topology::Broadcast)
      return;
    ++syncs;
    const Fitness b = node.child(0).best().fitness;
    for (std::size_t i = 1; i < node.arity(); ++i)
      if (node.child(i).best().fitness != b)
        ++violations;
  };
  const auto fam = family_by_label("6z15x20");
  const std::vector<std::string> archs{"5Br(MAHC,MATS,MAHC)", "Ca",
                                       "5Br(Hu,CEM,HC)", "3Br(HC,TS,CE,CEM)"};
  for (std::size_t i = 0; i < archs.size(); ++i) {
    const auto spec = parse_architecture(archs[i], preset_macros());
    run(spec, generate_dataset(fam, i), emax_for(fam, 100), rng(), {}, hooks);
  }
  for (int i = 0; i < 10; ++i) {
    auto spec = random_tree(1, 4, 4, rng);
    spec.topology = Topology::Broadcast;
    try {
      run(spec, generate_dataset(fam, 100 + i), emax_for(fam, 100), rng(), {},
          hooks);
    } catch (const BudgetTooSmall &) {
    }
  }
  return {syncs > 0 && violations == 0,
          std::to_string(syncs) + " broadcast synchronisations, " +
              std::to_string(violations) + " unequal sibling bests"};
}

Outcome parser_round_trip() {
  Rng rng(31);
  int max_depth = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto spec = random_expression(3, rng);
    if (!spec.is_leaf())
      max_depth = std::max(max_depth, depth(spec));
    const std::string text = print_architecture(spec);
    const auto back = parse_architecture(text);
    if (!(back == spec) || print_architecture(back) != text)
      return {false, "round trip changed " + text};
  }
  const auto &m = preset_macros();
  const int hu = depth(parse_architecture("Hu", m));
  const int ca = depth(parse_architecture("Ca", m));
  const int ox = depth(parse_architecture("Ox", m));
  return {hu == 0 && ca == 1 && ox == 2,
          "1000 trees (max depth " + std::to_string(max_depth) +
              ") round-trip; depth Hu/Ca/Ox = " + std::to_string(hu) + "/" +
              std::to_string(ca) + "/" + std::to_string(ox)};
}

Outcome stats_fixtures() {
  // Hand-lotion example: 7 panelists (rows) x 5 brands.
  ResultMatrix lotion(7, 5);
  lotion << 5, 4, 7, 10, 12, //
      1, 3, 1, 0, 2,         //
      16, 12, 22, 22, 35,    //
      5, 4, 3, 5, 4,         //
      10, 9, 7, 13, 10,      //
      19, 18, 28, 37, 58,    //
      10, 7, 6, 8, 7;
  const QuadeResult q = quade_test(lotion);
  const double ref = 3.8292515841753727;
  const bool quade_ok = std::abs(q.statistic - ref) <= 1e-6;

  const std::vector<double> p{0.001, 0.02, 0.04};
  const auto rows = holm_step_down(p, 0.05);
  const bool holm_ok = rows[0].threshold == 0.05 / 3 &&
                       rows[1].threshold == 0.05 / 2 &&
                       rows[2].threshold == 0.05 / 1 && rows[0].rejected &&
                       rows[1].rejected && rows[2].rejected;

  Rng rng(8);
  long long bad_rows = 0;
  for (int r = 0; r < 100000; ++r) {
    const int k = std::uniform_int_distribution<int>(2, 12)(rng);
    Eigen::RowVectorXd row(k);
    std::uniform_int_distribution<int> v(0, 5);
    for (int j = 0; j < k; ++j)
      row(j) = v(rng);
    const double sum = average_ranks(row).sum();
    if (std::abs(sum - k * (k + 1) / 2.0) > 1e-9)
      ++bad_rows;
  }
  return {quade_ok && holm_ok && bad_rows == 0,
          "Quade " + fmt(q.statistic, 9) + " vs " + fmt(ref, 9) +
              ", Holm pattern " + (holm_ok ? "matches" : "differs") + ", " +
              std::to_string(bad_rows) + " of 1e5 rank rows off"};
}

std::map<std::string, double> mean_fitness(const std::vector<RunRecord> &recs) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto &r : recs)
    if (r.ok()) {
      acc[r.architecture].first += static_cast<double>(r.best_fitness);
      ++acc[r.architecture].second;
    }
  std::map<std::string, double> out;
  for (const auto &[a, s] : acc)
    out[a] = s.first / s.second;
  return out;
}

Outcome corridor_one(const fs::path &work) {
  ExperimentConfig cfg;
  cfg.families = {family_by_label("4z10x9")};
  cfg.datasets_per_family = 5;
  cfg.runs_per_dataset = 10;
  cfg.phi = 100;
  cfg.master_seed = 0;
  for (const char *k : {"HC", "TS", "CE", "CEM", "MAHC", "MATS"})
    cfg.architectures.emplace_back(k, parse_architecture(k));
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = run_experiment(cfg, work / "corridor1");
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  bool ok = res.failed_runs == 0 && secs < 120.0;
  std::string detail;
  for (const auto &[a, m] : mean_fitness(res.records)) {
    ok = ok && m >= 7.0 && m <= 10.0;
    detail += a + " " + fmt(m, 2) + ", ";
  }
  return {ok, detail + "band [7, 10], sweep " + fmt(secs, 1) +
                  " s (limit 120 s)"};
}

const std::vector<std::string> kMidFamilies{"6z15x20",  "10z20x20",
                                            "10z30x25", "15z30x40",
                                            "15z40x30", "25z50x40"};
// Families whose budget at phi = 100 admits every slice of the depth-3 tree.
const std::vector<std::string> kDeepFamilies{"15z30x40", "15z40x30",
                                             "25z50x40"};

// Hu = 5Ri(MAHC,MATS,MAHC), Phi1 = 5Br(Hu,MAHC,CEM), Phi2 = 5Br(Ca,MAHC,CEM),
// Phi3 = 5Br(Ox,MAHC,CEM). Run seeds hash these names.
struct DepthSweep {
  std::vector<RunRecord> shallow; // Hu, Phi1, Phi2 on the mid families
  std::vector<RunRecord> deep;    // Phi3 on the deep families
  double seconds = 0.0;
};

// Records of one sweep restricted to its grid; an output directory reused
// with a larger protocol may hold more.
std::vector<RunRecord> grid_records(const ExperimentConfig &cfg,
                                    const std::vector<RunRecord> &all) {
  std::set<std::string> archs, fams;
  for (const auto &a : cfg.architectures)
    archs.insert(a.first);
  for (const auto &f : cfg.families)
    fams.insert(f.label());
  std::vector<RunRecord> out;
  for (const auto &r : all)
    if (archs.count(r.architecture) && fams.count(r.instance) &&
        r.dataset < cfg.datasets_per_family && r.run < cfg.runs_per_dataset)
      out.push_back(r);
  return out;
}

DepthSweep depth_sweep(const fs::path &work, int runs) {
  static std::optional<DepthSweep> cached;
  if (cached)
    return *cached;
  const auto &m = preset_macros();
  ExperimentConfig cfg;
  cfg.datasets_per_family = 5;
  cfg.runs_per_dataset = runs;
  cfg.phi = 100;
  cfg.master_seed = 0;
  cfg.families.clear();
  for (const auto &l : kMidFamilies)
    cfg.families.push_back(family_by_label(l));
  cfg.architectures = {{"Hu", parse_architecture("Hu", m)},
                       {"Phi1", parse_architecture("5Br(Hu,MAHC,CEM)", m)},
                       {"Phi2", parse_architecture("5Br(Ca,MAHC,CEM)", m)}};
  const auto t0 = std::chrono::steady_clock::now();
  DepthSweep out;
  out.shallow = grid_records(cfg, run_experiment(cfg, work / "depth").records);

  // Datasets derive from the master seed, so both sweeps see the same ones.
  cfg.families.clear();
  for (const auto &l : kDeepFamilies)
    cfg.families.push_back(family_by_label(l));
  cfg.architectures = {{"Phi3", parse_architecture("5Br(Ox,MAHC,CEM)", m)}};
  out.deep = grid_records(cfg, run_experiment(cfg, work / "depth3").records);
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  cached = out;
  return out;
}

std::string rank_line(const AnalysisReport &rep) {
  std::string s;
  for (std::size_t j = 0; j < rep.algorithms.size(); ++j)
    s += rep.algorithms[j] + " " +
         fmt(rep.ranks.mean_rank(static_cast<Eigen::Index>(j))) + ", ";
  return s;
}

double rank_of(const AnalysisReport &rep, const std::string &name) {
  for (std::size_t j = 0; j < rep.algorithms.size(); ++j)
    if (rep.algorithms[j] == name)
      return rep.ranks.mean_rank(static_cast<Eigen::Index>(j));
  throw InvalidArgument("no algorithm " + name);
}

Outcome corridor_two(const fs::path &work, int runs) {
  const DepthSweep s = depth_sweep(work, runs);
  const auto rep = analyze(s.shallow, "Phi2", 0.05);
  const double r2 = rank_of(rep, "Phi2");
  const double r1 = rank_of(rep, "Phi1");
  const double r0 = rank_of(rep, "Hu");
  return {r2 <= r1 && r1 <= r0,
          "mean ranks over " + std::to_string(rep.instances.size()) +
              " families: " + rank_line(rep) +
              "want Phi2 <= Phi1 <= Hu; sweep " + fmt(s.seconds, 0) +
              " s"};
}

Outcome depth_degradation(const fs::path &work, int runs) {
  const DepthSweep s = depth_sweep(work, runs);
  const std::set<std::string> deep(kDeepFamilies.begin(), kDeepFamilies.end());
  std::vector<RunRecord> recs = s.deep;
  for (const auto &r : s.shallow)
    if (deep.count(r.instance))
      recs.push_back(r);
  const auto rep = analyze(recs, "Phi2", 0.05);
  const double r2 = rank_of(rep, "Phi2");
  const double r3 = rank_of(rep, "Phi3");
  return {r3 >= r2, "mean ranks over " +
                        std::to_string(rep.instances.size()) +
                        " depth-3 feasible families: " + rank_line(rep) +
                        "want Phi3 >= Phi2"};
}

Outcome operator_validity() {
  Rng rng(123);
  std::uniform_int_distribution<int> size(3, 60);
  long long violations = 0;
  for (int i = 0; i < 1000000; ++i) {
    const int n = size(rng);
    const auto p = random_permutation(n, rng);
    const auto mv = sample_block_move(n, rng);
    if (!block_move_valid(mv, n) ||
        !is_permutation_of_n(apply_block_move(p, mv), n))
      ++violations;
  }
  for (int i = 0; i < 1000000; ++i) {
    const int n = size(rng);
    const auto a = random_permutation(n, rng);
    const auto b = random_permutation(n, rng);
    if (!is_permutation_of_n(apx_crossover(a, b, rng), n))
      ++violations;
  }
  for (int i = 0; i < 1000000; ++i) {
    const int n = size(rng);
    if (!is_permutation_of_n(mutate(random_permutation(n, rng), 1.0, rng), n))
      ++violations;
  }
  return {violations == 0, "3 x 1e6 applications, " +
                               std::to_string(violations) + " invalid"};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Acceptance checks"};
  int runs = 10;
  std::string work_dir;
  bool fast = false;
  app.add_option("--runs", runs,
                 "Runs per dataset for the depth comparisons")
      ->check(CLI::PositiveNumber);
  app.add_option("--work", work_dir,
                 "Keep sweep outputs here (resumes existing records)");
  app.add_flag("--skip-sweeps", fast,
               "Skip the depth comparisons (criteria 8 and 9)");
  CLI11_PARSE(app, argc, argv);

  fs::path work = work_dir;
  const bool temporary = work_dir.empty();
  if (temporary) {
    work = fs::temp_directory_path() /
           ("deepmemetic_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(work);
  }
  fs::create_directories(work);

  report(1, "KTNS optimality", ktns_optimality);
  report(2, "worked KTNS fixtures", worked_fixtures);
  report(3, "budget conservation", budget_conservation);
  report(4, "broadcast synchronisation", broadcast_sync);
  report(5, "parser round trip", parser_round_trip);
  report(6, "statistics fixtures", stats_fixtures);
  report(7, "corridor 4z10x9", [&] { return corridor_one(work); });
  if (!fast) {
    report(8, "depth ordering", [&] { return corridor_two(work, runs); });
    report(9, "depth degradation",
           [&] { return depth_degradation(work, runs); });
  }
  report(10, "operator validity", operator_validity);

  if (temporary)
    fs::remove_all(work);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
