#include <deepmemetic/architecture.hpp>

#include <cctype>
#include <sstream>

namespace deepmemetic {

std::string topology_code(Topology t) {
  switch (t) {
  case Topology::Ring:
    return "Ri";
  case Topology::Broadcast:
    return "Br";
  case Topology::Random:
    return "Ra";
  }
  return "??";
}

ArchitectureSpec ArchitectureSpec::Leaf(AgentKind kind) {
  ArchitectureSpec s;
  s.leaf = kind;
  return s;
}

ArchitectureSpec ArchitectureSpec::Node(int cycles, Topology topology,
                                        std::vector<ArchitectureSpec> children) {
  ArchitectureSpec s;
  s.cycles = cycles;
  s.topology = topology;
  s.children = std::move(children);
  return s;
}

namespace {

class Parser {
public:
  Parser(const std::string &text, const MacroTable &macros, int line)
      : text_(text), macros_(macros), line_(line) {}

  ArchitectureSpec parse() {
    auto spec = arch();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return spec;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError(what, line_, column());
  }
  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c))
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  ArchitectureSpec arch() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of expression");
    if (std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return node();
    if (std::isalpha(static_cast<unsigned char>(text_[pos_])))
      return leaf();
    fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

  ArchitectureSpec node() {
    const std::size_t start = pos_;
    long cycles = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      cycles = cycles * 10 + (text_[pos_] - '0');
      if (cycles > 1'000'000'000L) {
        pos_ = start;
        fail("cycle count too large");
      }
      ++pos_;
    }
    if (cycles < 1) {
      pos_ = start;
      fail("cycle count must be positive");
    }
    const std::size_t topo_at = pos_;
    const std::string code = text_.substr(pos_, 2);
    Topology topo;
    if (code == "Ri")
      topo = Topology::Ring;
    else if (code == "Br")
      topo = Topology::Broadcast;
    else if (code == "Ra")
      topo = Topology::Random;
    else
      fail("expected topology 'Ri', 'Br' or 'Ra'");
    pos_ += 2;
    expect('(');
    std::vector<ArchitectureSpec> children;
    children.push_back(arch());
    while (peek(',')) {
      ++pos_;
      children.push_back(arch());
    }
    expect(')');
    if (children.size() < 2)
      throw ArityError("cooperative node needs at least two agents", line_,
                       static_cast<int>(topo_at) + 1);
    return ArchitectureSpec::Node(static_cast<int>(cycles), topo,
                                  std::move(children));
  }

  ArchitectureSpec leaf() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (auto kind = agent_kind_from_string(name))
      return ArchitectureSpec::Leaf(*kind);
    if (auto it = macros_.find(name); it != macros_.end())
      return it->second;
    throw UnknownLeafError("unknown agent '" + name + "'", line_,
                           static_cast<int>(start) + 1);
  }

  const std::string &text_;
  const MacroTable &macros_;
  int line_;
  std::size_t pos_ = 0;
};

void print_into(const ArchitectureSpec &spec, std::string &out) {
  if (spec.is_leaf()) {
    out += to_string(*spec.leaf);
    return;
  }
  out += std::to_string(spec.cycles);
  out += topology_code(spec.topology);
  out += '(';
  for (std::size_t i = 0; i < spec.children.size(); ++i) {
    if (i)
      out += ',';
    print_into(spec.children[i], out);
  }
  out += ')';
}

} // namespace

ArchitectureSpec parse_architecture(const std::string &text,
                                    const MacroTable &macros) {
  return Parser(text, macros, 1).parse();
}

std::string print_architecture(const ArchitectureSpec &spec) {
  std::string out;
  print_into(spec, out);
  return out;
}

int depth(const ArchitectureSpec &spec) {
  if (spec.is_leaf())
    throw InvalidArgument("depth is defined for cooperative nodes only");
  int deepest = -1;
  for (const auto &child : spec.children)
    if (!child.is_leaf())
      deepest = std::max(deepest, depth(child));
  return deepest + 1;
}

MacroTable parse_macro_bindings(const std::string &text, MacroTable base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'NAME = EXPR'", line_no,
                       static_cast<int>(first) + 1);
    std::string name = line.substr(first, eq - first);
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty() ||
        !std::isalpha(static_cast<unsigned char>(name.front())))
      throw ParseError("invalid macro name '" + name + "'", line_no,
                       static_cast<int>(first) + 1);
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw ParseError("invalid macro name '" + name + "'", line_no,
                         static_cast<int>(first) + 1);
    if (agent_kind_from_string(name))
      throw ParseError("macro name '" + name + "' shadows an agent", line_no,
                       static_cast<int>(first) + 1);
    const std::string expr = line.substr(eq + 1);
    try {
      base[name] = Parser(expr, base, line_no).parse();
    } catch (const ParseError &e) {
      // Re-anchor the column to the full line.
      throw ParseError("in binding '" + name + "': " + e.message(),
                       line_no, e.column() + static_cast<int>(eq) + 1);
    }
  }
  return base;
}

const MacroTable &preset_macros() {
  static const MacroTable table = parse_macro_bindings(
      "Hu = 5Ri(MAHC,MATS,MAHC)\n"
      "Ca = 5Br(Hu,MAHC,CEM)\n"
      "Ox = 5Br(Ca,MAHC,CEM)\n");
  return table;
}

} // namespace deepmemetic
