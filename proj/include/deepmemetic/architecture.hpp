#ifndef DEEPMEMETIC_ARCHITECTURE_HPP
#define DEEPMEMETIC_ARCHITECTURE_HPP

#include <deepmemetic/agents.hpp>
#include <deepmemetic/common.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deepmemetic {

enum class Topology { Ring, Broadcast, Random };

/// Two-letter code used in architecture expressions: Ri, Br, Ra.
std::string topology_code(Topology t);

/// A cooperative architecture: either a single metaheuristic (leaf) or a
/// node running `cycles` exploration/migration cycles over two or more
/// children connected by `topology`.
struct ArchitectureSpec {
  std::optional<AgentKind> leaf;
  int cycles = 0;
  Topology topology = Topology::Ring;
  std::vector<ArchitectureSpec> children;

  bool is_leaf() const { return leaf.has_value(); }

  static ArchitectureSpec Leaf(AgentKind kind);
  static ArchitectureSpec Node(int cycles, Topology topology,
                               std::vector<ArchitectureSpec> children);

  friend bool operator==(const ArchitectureSpec &,
                         const ArchitectureSpec &) = default;
};

/// Named sub-architectures usable as leaves in expressions.
using MacroTable = std::map<std::string, ArchitectureSpec>;

class UnknownLeafError : public ParseError {
public:
  using ParseError::ParseError;
};

class ArityError : public ParseError {
public:
  using ParseError::ParseError;
};

/// Grammar:
///   arch  := node | leaf
///   node  := INT topo '(' arch (',' arch)* ')'
///   topo  := 'Ri' | 'Br' | 'Ra'
///   leaf  := 'HC' | 'TS' | 'CE' | 'CEM' | 'MAHC' | 'MATS' | macro name
/// Whitespace between tokens is ignored. Errors carry the 1-based column.
ArchitectureSpec parse_architecture(const std::string &text,
                                    const MacroTable &macros = {});

/// Canonical form: no whitespace, macros expanded.
std::string print_architecture(const ArchitectureSpec &spec);

/// Meta-cooperation degree: 0 when every child is a leaf, otherwise one
/// more than the deepest node child. Throws InvalidArgument on a leaf.
int depth(const ArchitectureSpec &spec);

/// Parses "NAME = EXPR" lines ('#' comments). Each binding may use the
/// names bound before it, starting from `base`.
MacroTable parse_macro_bindings(const std::string &text,
                                MacroTable base = {});

/// Hu = 5Ri(MAHC,MATS,MAHC), Ca = 5Br(Hu,MAHC,CEM), Ox = 5Br(Ca,MAHC,CEM).
const MacroTable &preset_macros();

} // namespace deepmemetic

#endif // DEEPMEMETIC_ARCHITECTURE_HPP
