#include <deepmemetic/harness.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace deepmemetic {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T> T parse_number(const std::string &text, int line) {
  T value{};
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError("expected an integer, got '" + text + "'", line, 1);
  return value;
}

InstanceFamily parse_family(const std::string &value, int line) {
  std::istringstream in(value);
  std::vector<std::string> parts;
  for (std::string p; in >> p;)
    parts.push_back(p);
  InstanceFamily f;
  if (parts.size() == 1) {
    try {
      return family_by_label(parts[0]);
    } catch (const Error &e) {
      throw ParseError(e.what(), line, 1);
    }
  }
  if (parts.size() != 5)
    throw ParseError("family needs a label or 'n m C min max'", line, 1);
  f.jobs = parse_number<int>(parts[0], line);
  f.tools = parse_number<int>(parts[1], line);
  f.capacity = parse_number<int>(parts[2], line);
  f.min_tools = parse_number<int>(parts[3], line);
  f.max_tools = parse_number<int>(parts[4], line);
  try {
    f.validate();
  } catch (const Error &e) {
    throw ParseError(e.what(), line, 1);
  }
  return f;
}

} // namespace

void ExperimentConfig::validate() const {
  if (families.empty())
    throw InvalidArgument("experiment needs at least one family");
  if (datasets_per_family < 1 || runs_per_dataset < 1)
    throw InvalidArgument("dataset and run counts must be at least 1");
  if (phi < 1)
    throw InvalidArgument("phi must be at least 1");
  if (architectures.empty())
    throw InvalidArgument("experiment needs at least one architecture");
  for (std::size_t i = 0; i < architectures.size(); ++i)
    for (std::size_t j = i + 1; j < architectures.size(); ++j)
      if (architectures[i].first == architectures[j].first)
        throw InvalidArgument("duplicate architecture name '" +
                              architectures[i].first + "'");
  for (std::size_t i = 0; i < families.size(); ++i) {
    families[i].validate();
    for (std::size_t j = i + 1; j < families.size(); ++j)
      if (families[i].label() == families[j].label())
        throw InvalidArgument("duplicate family '" + families[i].label() +
                              "'");
  }
}

ExperimentConfig parse_experiment_config(const std::string &text) {
  ExperimentConfig cfg;
  MacroTable macros = preset_macros();
  bool default_families = true;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no, 1);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "datasets_per_family") {
      cfg.datasets_per_family = parse_number<int>(value, line_no);
    } else if (key == "runs_per_dataset") {
      cfg.runs_per_dataset = parse_number<int>(value, line_no);
    } else if (key == "phi") {
      cfg.phi = parse_number<int>(value, line_no);
    } else if (key == "master_seed") {
      cfg.master_seed = parse_number<std::uint64_t>(value, line_no);
    } else if (key == "family") {
      if (default_families) {
        cfg.families.clear();
        default_families = false;
      }
      cfg.families.push_back(parse_family(value, line_no));
    } else if (key.rfind("macro ", 0) == 0) {
      macros = parse_macro_bindings(trim(key.substr(6)) + " = " + value,
                                    std::move(macros));
    } else if (key.rfind("arch ", 0) == 0) {
      const std::string name = trim(key.substr(5));
      if (name.empty())
        throw ParseError("architecture needs a name", line_no, 1);
      try {
        cfg.architectures.emplace_back(name,
                                       parse_architecture(value, macros));
      } catch (const ParseError &e) {
        throw ParseError("in architecture '" + name + "': " + e.message(),
                         line_no, e.column());
      }
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, 1);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::int64_t emax_for(const InstanceFamily &family, int phi) {
  if (family.tools <= family.capacity)
    throw InvalidArgument("E_max needs m > C");
  if (phi < 1 || family.jobs < 1)
    throw InvalidArgument("E_max needs phi >= 1 and n >= 1");
  return static_cast<std::int64_t>(phi) * family.jobs *
         (family.tools - family.capacity);
}

std::uint64_t dataset_seed(std::uint64_t master_seed,
                           const std::string &label, int dataset) {
  return derive_seed(derive_seed(master_seed, hash_string("dataset:" + label)),
                     static_cast<std::uint64_t>(dataset));
}

std::uint64_t run_seed(std::uint64_t master_seed,
                       const std::string &architecture,
                       const std::string &label, int dataset, int run) {
  std::uint64_t s = derive_seed(master_seed, hash_string(architecture));
  s = derive_seed(s, hash_string(label));
  s = derive_seed(s, static_cast<std::uint64_t>(dataset));
  return derive_seed(s, static_cast<std::uint64_t>(run));
}

} // namespace deepmemetic
