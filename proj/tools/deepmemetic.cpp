#include <deepmemetic/architecture.hpp>
#include <deepmemetic/cooperation.hpp>
#include <deepmemetic/harness.hpp>
#include <deepmemetic/instance.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace deepmemetic;

namespace {

MacroTable load_macros(const std::string &path) {
  MacroTable macros = preset_macros();
  if (path.empty())
    return macros;
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot read macro file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_macro_bindings(ss.str(), std::move(macros));
}

int cmd_solve(const std::string &arch, const std::string &instance_path,
              std::int64_t budget, int phi, std::uint64_t seed,
              const std::string &macro_path) {
  const ArchitectureSpec spec = parse_architecture(arch, load_macros(macro_path));
  const ToSPInstance inst = load_instance(instance_path);
  if (budget <= 0) {
    InstanceFamily f{inst.jobs(), inst.tools(), inst.capacity(), 1,
                     inst.capacity()};
    budget = emax_for(f, phi);
  }
  const RunResult res = run(spec, inst, budget, seed);
  nlohmann::json out;
  out["architecture"] = print_architecture(spec);
  out["instance"] = inst.label();
  out["budget"] = budget;
  out["evaluations"] = res.evaluations;
  out["seed"] = seed;
  out["best_fitness"] = res.best.fitness;
  out["sequence"] = res.best.order;
  std::cout << out.dump(2) << '\n';
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Deep meta-cooperative solver for the tool switching problem"};
  app.require_subcommand(1);
  std::string macro_path;
  app.add_option("--macros", macro_path,
                 "File of NAME = EXPR bindings (Hu, Ca, Ox are predefined)");

  auto *solve = app.add_subcommand("solve", "Run an architecture on an instance");
  std::string arch, instance_path;
  std::int64_t budget = 0;
  int phi = 100;
  std::uint64_t seed = 1;
  solve->add_option("--arch", arch, "Architecture expression")->required();
  solve->add_option("--instance", instance_path, "Instance file")->required();
  auto *budget_opt = solve->add_option("--budget", budget, "Evaluation budget");
  solve->add_option("--phi", phi, "Budget factor, E = phi n (m - C)")
      ->excludes(budget_opt);
  solve->add_option("--seed", seed, "Random seed");

  auto *gen = app.add_subcommand("gen", "Generate a random instance");
  InstanceFamily family;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", family.jobs, "Jobs")->required();
  gen->add_option("--m", family.tools, "Tools")->required();
  gen->add_option("--cap", family.capacity, "Magazine capacity")->required();
  gen->add_option("--min", family.min_tools, "Minimum tools per job")
      ->required();
  gen->add_option("--max", family.max_tools, "Maximum tools per job")
      ->required();
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file")->required();

  auto *bench = app.add_subcommand("bench", "Run an experiment sweep");
  std::string config_path, bench_out;
  bench->add_option("--config", config_path, "Experiment config")->required();
  bench->add_option("--out", bench_out, "Output directory")->required();

  auto *an = app.add_subcommand("analyze", "Rank statistics over records");
  std::string records_path, control, analyze_out;
  double alpha = 0.05;
  an->add_option("--records", records_path, "records.csv")->required();
  an->add_option("--control", control, "Control architecture name")
      ->required();
  an->add_option("--alpha", alpha, "Significance level");
  an->add_option("--out", analyze_out, "Output directory")->required();

  auto *dep = app.add_subcommand("depth", "Print the meta-cooperation degree");
  std::string depth_arch;
  dep->add_option("--arch", depth_arch, "Architecture expression")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve)
      return cmd_solve(arch, instance_path, budget, phi, seed, macro_path);
    if (*gen) {
      family.validate();
      save_instance(generate_dataset(family, gen_seed), gen_out);
      return 0;
    }
    if (*bench) {
      const ExperimentConfig cfg = load_experiment_config(config_path);
      const ExperimentResult res = run_experiment(cfg, bench_out);
      std::cout << "new runs: " << res.new_runs
                << ", failed: " << res.failed_runs
                << ", total records: " << res.records.size() << '\n';
      return 0;
    }
    if (*an) {
      const AnalysisReport rep =
          analyze(load_records(records_path), control, alpha);
      write_report(rep, analyze_out);
      std::cout << format_mean_ranks_csv(rep) << '\n'
                << format_holm_csv(rep);
      return 0;
    }
    if (*dep) {
      std::cout << depth(parse_architecture(depth_arch,
                                            load_macros(macro_path)))
                << '\n';
      return 0;
    }
  } catch (const IncompleteGrid &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
