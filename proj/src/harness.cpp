#include <deepmemetic/harness.hpp>

#include <deepmemetic/cooperation.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace deepmemetic {

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += "\"\"";
    else if (c == '\n' || c == '\r')
      out += ' ';
    else
      out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string &line, int line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted)
    throw ParseError("unterminated quoted field", line_no,
                     static_cast<int>(line.size()));
  fields.push_back(std::move(cur));
  return fields;
}

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InvalidArgument("cannot write " + path.string());
  out << text;
}

auto record_key(const RunRecord &r) {
  return std::tie(r.architecture, r.instance, r.dataset, r.run);
}

} // namespace

bool record_key_less(const RunRecord &a, const RunRecord &b) {
  return record_key(a) < record_key(b);
}

std::string format_record(const RunRecord &r, bool with_wall_time) {
  std::string out = csv_field(r.architecture) + ',' + csv_field(r.instance) +
                    ',' + std::to_string(r.dataset) + ',' +
                    std::to_string(r.run) + ',' + std::to_string(r.seed) +
                    ',' + std::to_string(r.best_fitness) + ',' +
                    std::to_string(r.evaluations) + ',';
  if (with_wall_time)
    out += fmt("%.6f", r.wall_time);
  return out + ',' + csv_field(r.status);
}

std::vector<RunRecord> parse_records(const std::string &text) {
  std::vector<RunRecord> records;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r")
      continue;
    if (line_no == 1 && line.rfind("architecture,", 0) == 0)
      continue;
    const auto f = split_csv_line(line, line_no);
    if (f.size() != 9)
      throw ParseError("expected 9 fields, got " + std::to_string(f.size()),
                       line_no, 1);
    RunRecord r;
    try {
      r.architecture = f[0];
      r.instance = f[1];
      r.dataset = std::stoi(f[2]);
      r.run = std::stoi(f[3]);
      r.seed = std::stoull(f[4]);
      r.best_fitness = std::stoll(f[5]);
      r.evaluations = std::stoll(f[6]);
      r.wall_time = f[7].empty() ? 0.0 : std::stod(f[7]);
    } catch (const std::logic_error &) {
      throw ParseError("malformed numeric field", line_no, 1);
    }
    r.status = f[8];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> load_records(const std::filesystem::path &path) {
  return parse_records(read_file(path));
}

void save_records(const std::vector<RunRecord> &records,
                  const std::filesystem::path &path) {
  std::string text = std::string(kRecordsHeader) + '\n';
  for (const auto &r : records)
    text += format_record(r) + '\n';
  write_file(path, text);
}

int sweep_threads_from_env() {
  const char *v = std::getenv("DEEPMEMETIC_THREADS");
  if (!v || !*v)
    return 0;
  const int n = std::atoi(v);
  return std::max(0, n);
}

namespace {

struct Job {
  std::size_t arch;
  std::size_t family;
  int dataset;
  int run;
};

RunRecord execute(const ExperimentConfig &cfg, const Job &job,
                  const ToSPInstance *inst, const std::string &dataset_error) {
  const auto &[name, spec] = cfg.architectures[job.arch];
  const InstanceFamily &family = cfg.families[job.family];
  RunRecord r;
  r.architecture = name;
  r.instance = family.label();
  r.dataset = job.dataset;
  r.run = job.run;
  r.seed = run_seed(cfg.master_seed, name, r.instance, job.dataset, job.run);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (!inst)
      throw Error(dataset_error);
    const RunResult res =
        run(spec, *inst, emax_for(family, cfg.phi), r.seed, cfg.params);
    r.best_fitness = res.best.fitness;
    r.evaluations = res.evaluations;
  } catch (const std::exception &e) {
    r.status = std::string("error: ") + e.what();
  }
  r.wall_time = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig &cfg,
                                const std::filesystem::path &out_dir,
                                int threads) {
  cfg.validate();
  if (threads < 0)
    threads = sweep_threads_from_env();
  std::filesystem::create_directories(out_dir / "instances");
  const auto records_path = out_dir / "records.csv";

  std::vector<RunRecord> records;
  if (std::filesystem::exists(records_path))
    records = load_records(records_path);
  std::set<std::tuple<std::string, std::string, int, int>> done;
  for (const auto &r : records)
    done.emplace(r.architecture, r.instance, r.dataset, r.run);

  std::vector<Job> jobs;
  std::set<std::pair<std::size_t, int>> needed;
  for (std::size_t a = 0; a < cfg.architectures.size(); ++a)
    for (std::size_t f = 0; f < cfg.families.size(); ++f)
      for (int d = 0; d < cfg.datasets_per_family; ++d)
        for (int r = 0; r < cfg.runs_per_dataset; ++r)
          if (!done.count({cfg.architectures[a].first,
                           cfg.families[f].label(), d, r})) {
            jobs.push_back({a, f, d, r});
            needed.emplace(f, d);
          }

  std::map<std::pair<std::size_t, int>, ToSPInstance> datasets;
  std::map<std::pair<std::size_t, int>, std::string> dataset_errors;
  for (const auto &[f, d] : needed) {
    const InstanceFamily &family = cfg.families[f];
    const auto path = out_dir / "instances" /
                      (family.label() + "_d" + std::to_string(d) + ".tosp");
    try {
      if (std::filesystem::exists(path)) {
        datasets.emplace(std::pair{f, d}, load_instance(path));
      } else {
        ToSPInstance inst = generate_dataset(
            family, dataset_seed(cfg.master_seed, family.label(), d));
        save_instance(inst, path);
        datasets.emplace(std::pair{f, d}, std::move(inst));
      }
    } catch (const std::exception &e) {
      dataset_errors[{f, d}] = e.what();
    }
  }

  const bool fresh_file = !std::filesystem::exists(records_path);
  std::ofstream log(records_path, std::ios::binary | std::ios::app);
  if (!log)
    throw InvalidArgument("cannot write " + records_path.string());
  if (fresh_file)
    log << kRecordsHeader << '\n' << std::flush;

  ExperimentResult result;
  std::mutex mu;
  auto finish = [&](RunRecord r) {
    std::lock_guard lock(mu);
    log << format_record(r) << '\n' << std::flush;
    ++result.new_runs;
    if (!r.ok())
      ++result.failed_runs;
    records.push_back(std::move(r));
  };
  auto work = [&](const Job &job) {
    const auto key = std::pair{job.family, job.dataset};
    const auto it = datasets.find(key);
    const ToSPInstance *inst = it == datasets.end() ? nullptr : &it->second;
    const auto err = dataset_errors.find(key);
    finish(execute(cfg, job, inst,
                   err == dataset_errors.end() ? "" : err->second));
  };

  if (threads <= 1) {
    for (const auto &job : jobs)
      work(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                         std::max<std::size_t>(jobs.size(), 1));
    for (std::size_t t = 0; t < n; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
          work(jobs[i]);
      });
    for (auto &t : pool)
      t.join();
  }
  log.close();

  std::sort(records.begin(), records.end(), record_key_less);
  save_records(records, records_path);
  write_file(out_dir / "summary.csv", format_summary(records));
  result.records = std::move(records);
  return result;
}

std::string format_summary(const std::vector<RunRecord> &records) {
  std::set<std::string> archs;
  std::set<std::string> instances;
  std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
  for (const auto &r : records) {
    archs.insert(r.architecture);
    instances.insert(r.instance);
    if (r.ok())
      cells[{r.instance, r.architecture}].push_back(
          static_cast<double>(r.best_fitness));
  }
  std::string out = "instance,stat";
  for (const auto &a : archs)
    out += ',' + csv_field(a);
  out += '\n';
  for (const auto &inst : instances) {
    std::string mean_line = csv_field(inst) + ",mean";
    std::string sd_line = csv_field(inst) + ",sd";
    for (const auto &a : archs) {
      const auto it = cells.find({inst, a});
      if (it == cells.end() || it->second.empty()) {
        mean_line += ',';
        sd_line += ',';
        continue;
      }
      const auto &v = it->second;
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (double x : v)
        mean += x;
      mean /= n;
      double ss = 0.0;
      for (double x : v)
        ss += (x - mean) * (x - mean);
      const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      mean_line += ',' + fmt("%.4f", mean);
      sd_line += ',' + fmt("%.4f", sd);
    }
    out += mean_line + '\n' + sd_line + '\n';
  }
  return out;
}

AnalysisReport analyze(const std::vector<RunRecord> &records,
                       const std::string &control, double alpha) {
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw InvalidArgument("alpha must lie in (0, 1)");
  std::set<std::string> archs;
  std::set<std::string> instances;
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> sums;
  for (const auto &r : records) {
    archs.insert(r.architecture);
    instances.insert(r.instance);
    if (r.ok()) {
      auto &cell = sums[{r.instance, r.architecture}];
      cell.first += static_cast<double>(r.best_fitness);
      ++cell.second;
    }
  }
  AnalysisReport rep;
  rep.alpha = alpha;
  rep.algorithms.assign(archs.begin(), archs.end());
  rep.instances.assign(instances.begin(), instances.end());
  if (rep.algorithms.size() < 2)
    throw InvalidArgument("analysis needs at least two architectures");
  const auto ctrl =
      std::find(rep.algorithms.begin(), rep.algorithms.end(), control);
  if (ctrl == rep.algorithms.end())
    throw InvalidArgument("control '" + control + "' not found in records");
  rep.control = ctrl - rep.algorithms.begin();

  const auto n = static_cast<Eigen::Index>(rep.instances.size());
  const auto k = static_cast<Eigen::Index>(rep.algorithms.size());
  rep.means.resize(n, k);
  std::vector<std::string> missing;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto it = sums.find({rep.instances[i], rep.algorithms[j]});
      if (it == sums.end()) {
        missing.push_back(rep.algorithms[j] + " @ " + rep.instances[i]);
        continue;
      }
      rep.means(i, j) = it->second.first / it->second.second;
    }
  if (!missing.empty()) {
    std::string what = "incomplete grid, missing cells:";
    for (const auto &m : missing)
      what += "\n  " + m;
    throw IncompleteGrid(what, std::move(missing));
  }

  rep.ranks = rank_rows(rep.means);
  if (n >= 2) {
    try {
      rep.quade = quade_test(rep.means);
      rep.quade_defined = true;
    } catch (const DegenerateStatistic &) {
      rep.quade_defined = false;
    }
  }
  rep.holm = holm_posthoc(rep.ranks, rep.control, alpha);
  for (Eigen::Index j = 0; j < k; ++j) {
    std::vector<double> col(rep.ranks.ranks.col(j).data(),
                            rep.ranks.ranks.col(j).data() + n);
    rep.rank_distribution.push_back(box_summary(col));
  }
  return rep;
}

std::string format_holm_csv(const AnalysisReport &report) {
  std::string out = "i,strategy,z,p,alpha_over_i,rejected\n";
  const std::size_t h = report.holm.size();
  for (std::size_t i = 1; i <= h; ++i) {
    const HolmRow &row = report.holm[h - i];
    out += std::to_string(i) + ',' +
           csv_field(report.algorithms[static_cast<std::size_t>(row.algorithm)]) +
           ',' + fmt("%.3e", row.z) + ',' + fmt("%.3e", row.p_value) + ',' +
           fmt("%.3e", row.threshold) + ',' +
           (row.rejected ? "true" : "false") + '\n';
  }
  return out;
}

std::string format_quade_csv(const AnalysisReport &report) {
  std::string out = "statistic,p,df1,df2,instances,algorithms\n";
  const auto n = std::to_string(report.instances.size());
  const auto k = std::to_string(report.algorithms.size());
  if (!report.quade_defined)
    return out + "NA,NA,NA,NA," + n + ',' + k + '\n';
  return out + fmt("%.10g", report.quade.statistic) + ',' +
         fmt("%.10g", report.quade.p_value) + ',' +
         fmt("%g", report.quade.df1) + ',' + fmt("%g", report.quade.df2) +
         ',' + n + ',' + k + '\n';
}

std::string format_rank_distribution_csv(const AnalysisReport &report) {
  std::string out = "strategy,min,q1,median,mean,q3,max,outliers\n";
  for (std::size_t j = 0; j < report.algorithms.size(); ++j) {
    const BoxSummary &b = report.rank_distribution[j];
    std::string outliers;
    for (std::size_t t = 0; t < b.outliers.size(); ++t)
      outliers += (t ? ";" : "") + fmt("%g", b.outliers[t]);
    out += csv_field(report.algorithms[j]) + ',' + fmt("%g", b.min) + ',' +
           fmt("%g", b.q1) + ',' + fmt("%g", b.median) + ',' +
           fmt("%.6g", b.mean) + ',' + fmt("%g", b.q3) + ',' +
           fmt("%g", b.max) + ',' + outliers + '\n';
  }
  return out;
}

std::string format_mean_ranks_csv(const AnalysisReport &report) {
  std::vector<std::size_t> order(report.algorithms.size());
  for (std::size_t j = 0; j < order.size(); ++j)
    order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return report.ranks.mean_rank(static_cast<Eigen::Index>(a)) <
           report.ranks.mean_rank(static_cast<Eigen::Index>(b));
  });
  std::string out = "strategy,mean_rank\n";
  for (auto j : order)
    out += csv_field(report.algorithms[j]) + ',' +
           fmt("%.6f", report.ranks.mean_rank(static_cast<Eigen::Index>(j))) +
           '\n';
  return out;
}

void write_report(const AnalysisReport &report,
                  const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "holm.csv", format_holm_csv(report));
  write_file(out_dir / "quade.csv", format_quade_csv(report));
  write_file(out_dir / "rank_distribution.csv",
             format_rank_distribution_csv(report));
  write_file(out_dir / "mean_ranks.csv", format_mean_ranks_csv(report));
}

} // namespace deepmemetic
