#include <deepmemetic/instance.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace deepmemetic {

ToSPInstance::ToSPInstance(int capacity, RequirementMatrix requirements,
                           std::string label)
    : capacity_(capacity), requirements_(std::move(requirements)),
      label_(std::move(label)) {
  const int m = tools();
  const int n = jobs();
  if (n < 1 || m < 1)
    throw InvalidArgument("instance needs at least one job and one tool");
  if (capacity_ < 1 || capacity_ >= m)
    throw InvalidArgument("capacity must satisfy 1 <= C < m (C=" +
                          std::to_string(capacity_) +
                          ", m=" + std::to_string(m) + ")");
  job_tools_.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      const auto v = requirements_(i, j);
      if (v > 1)
        throw InvalidArgument("requirement matrix must be binary");
      if (v)
        job_tools_[j].push_back(i);
    }
    const int count = static_cast<int>(job_tools_[j].size());
    if (count == 0)
      throw InvalidArgument("job " + std::to_string(j) + " requires no tool");
    if (count > capacity_)
      throw InvalidArgument("job " + std::to_string(j) + " requires " +
                            std::to_string(count) +
                            " tools, more than the magazine capacity");
  }
}

std::string InstanceFamily::label() const {
  return std::to_string(capacity) + "z" + std::to_string(jobs) + "x" +
         std::to_string(tools);
}

void InstanceFamily::validate() const {
  if (jobs < 1 || tools < 1 || capacity < 1 || min_tools < 1)
    throw InvalidArgument("family counts must be positive");
  if (capacity >= tools)
    throw InvalidArgument("family capacity must be below the tool count");
  if (min_tools > max_tools || max_tools > capacity)
    throw InvalidArgument(
        "family bounds must satisfy min <= max <= capacity");
}

const std::vector<InstanceFamily> &standard_families() {
  // n, m, C, min, max
  static const std::vector<InstanceFamily> families = {
      {10, 9, 4, 2, 4},     {10, 10, 4, 2, 4},    {10, 15, 6, 3, 6},
      {15, 12, 6, 3, 6},    {15, 20, 6, 3, 6},    {20, 15, 8, 3, 8},
      {20, 16, 8, 3, 8},    {20, 20, 10, 4, 10},  {30, 25, 10, 4, 10},
      {30, 40, 15, 6, 15},  {40, 30, 15, 6, 15},  {40, 60, 20, 7, 20},
      {20, 30, 24, 9, 24},  {20, 36, 24, 9, 24},  {50, 40, 25, 9, 20},
      {20, 40, 30, 11, 30},
  };
  return families;
}

InstanceFamily family_by_label(const std::string &label) {
  for (const auto &f : standard_families())
    if (f.label() == label)
      return f;
  throw InvalidArgument("unknown instance family '" + label + "'");
}

bool job_covered_by(const ToSPInstance &inst, int a, int b) {
  const auto &ta = inst.tools_of(a);
  const auto &tb = inst.tools_of(b);
  return std::includes(tb.begin(), tb.end(), ta.begin(), ta.end());
}

namespace {

void draw_column(RequirementMatrix &a, int job, const InstanceFamily &f,
                 std::vector<int> &scratch, Rng &rng) {
  std::uniform_int_distribution<int> count_dist(f.min_tools, f.max_tools);
  const int count = count_dist(rng);
  std::iota(scratch.begin(), scratch.end(), 0);
  // partial Fisher-Yates
  for (int k = 0; k < count; ++k) {
    std::uniform_int_distribution<int> pick(k, f.tools - 1);
    std::swap(scratch[k], scratch[pick(rng)]);
  }
  a.col(job).setZero();
  for (int k = 0; k < count; ++k)
    a(scratch[k], job) = 1;
}

bool column_subset(const RequirementMatrix &a, int x, int y) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (a(i, x) && !a(i, y))
      return false;
  return true;
}

} // namespace

ToSPInstance generate_dataset(const InstanceFamily &family,
                              std::uint64_t seed) {
  family.validate();
  Rng rng(seed);
  const int n = family.jobs;
  const int m = family.tools;
  RequirementMatrix a = RequirementMatrix::Zero(m, n);
  std::vector<int> scratch(m);
  for (int j = 0; j < n; ++j)
    draw_column(a, j, family, scratch, rng);

  std::vector<char> offending(n);
  for (int round = 0; round < kMaxResampleRounds; ++round) {
    std::fill(offending.begin(), offending.end(), 0);
    bool any = false;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x != y && column_subset(a, x, y)) {
          // Both jobs of a covered pair are redrawn.
          offending[x] = 1;
          offending[y] = 1;
          any = true;
        }
      }
    }
    if (!any) {
      const Eigen::VectorXi usage = a.cast<int>().rowwise().sum();
      if ((usage.array() > 0).all())
        return ToSPInstance(family.capacity, std::move(a), family.label());
      std::uniform_int_distribution<int> pick(0, n - 1);
      offending[pick(rng)] = 1;
    }
    for (int j = 0; j < n; ++j)
      if (offending[j])
        draw_column(a, j, family, scratch, rng);
  }
  throw InfeasibleFamily("could not generate a cover-free instance for family " +
                         family.label() + " after " +
                         std::to_string(kMaxResampleRounds) + " rounds");
}

ToSPInstance parse_instance(const std::string &text,
                            const std::string &default_label) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string label = default_label;
  bool have_header = false;
  int n = 0, m = 0, capacity = 0;
  RequirementMatrix a;
  int row = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos)
      continue;
    if (line[first] == '#') {
      const std::string tag = "# label:";
      if (line.compare(first, tag.size(), tag) == 0) {
        auto value = line.substr(first + tag.size());
        const auto b = value.find_first_not_of(" \t");
        label = b == std::string::npos ? std::string{} : value.substr(b);
      }
      continue;
    }

    std::vector<std::pair<long, int>> tokens; // value, column
    std::size_t pos = 0;
    while (pos < line.size()) {
      if (line[pos] == ' ' || line[pos] == '\t') {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        ++pos;
      const std::string tok = line.substr(start, pos - start);
      const int col = static_cast<int>(start) + 1;
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("unexpected token '" + tok + "'", line_no, col);
      if (tok.size() > 9)
        throw ParseError("number too large '" + tok + "'", line_no, col);
      tokens.emplace_back(std::stol(tok), col);
    }

    if (!have_header) {
      if (tokens.size() != 3)
        throw ParseError("header must be 'n m C'", line_no,
                         static_cast<int>(first) + 1);
      n = static_cast<int>(tokens[0].first);
      m = static_cast<int>(tokens[1].first);
      capacity = static_cast<int>(tokens[2].first);
      if (n < 1 || m < 1)
        throw ParseError("header dimensions must be positive", line_no,
                         tokens[0].second);
      a = RequirementMatrix::Zero(m, n);
      have_header = true;
      continue;
    }
    if (row >= m)
      throw DimensionMismatch("more than m=" + std::to_string(m) +
                              " matrix rows (line " +
                              std::to_string(line_no) + ")");
    if (static_cast<int>(tokens.size()) != n)
      throw DimensionMismatch("row " + std::to_string(row + 1) + " has " +
                              std::to_string(tokens.size()) +
                              " entries, expected n=" + std::to_string(n) +
                              " (line " + std::to_string(line_no) + ")");
    for (int j = 0; j < n; ++j) {
      if (tokens[j].first > 1)
        throw ParseError("matrix entries must be 0 or 1", line_no,
                         tokens[j].second);
      a(row, j) = static_cast<std::uint8_t>(tokens[j].first);
    }
    ++row;
  }
  if (!have_header)
    throw ParseError("missing header", line_no + 1, 1);
  if (row != m)
    throw DimensionMismatch("expected m=" + std::to_string(m) +
                            " matrix rows, found " + std::to_string(row));
  return ToSPInstance(capacity, std::move(a), std::move(label));
}

std::string format_instance(const ToSPInstance &inst) {
  std::ostringstream out;
  out << "# label: " << inst.label() << '\n';
  out << inst.jobs() << ' ' << inst.tools() << ' ' << inst.capacity() << '\n';
  for (int i = 0; i < inst.tools(); ++i) {
    for (int j = 0; j < inst.jobs(); ++j) {
      if (j)
        out << ' ';
      out << (inst.requires_tool(i, j) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

ToSPInstance load_instance(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), path.stem().string());
}

void save_instance(const ToSPInstance &inst,
                   const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write instance file " + path.string());
  out << format_instance(inst);
  if (!out)
    throw Error("failed writing instance file " + path.string());
}

} // namespace deepmemetic
