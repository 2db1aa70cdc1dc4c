// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "interpolmc/interp.hpp"
#include "interpolmc/ts.hpp"

namespace interpolmc {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> list;
  bool is_list = false;
  int line = 0;
  int column = 0;
};

/// All top-level S-expressions; `;` starts a comment.
std::vector<SExpr> parse_sexprs(std::string_view text);

using SymbolTable = std::map<std::string, Sort>;

struct FormulaSyntax {
  const SymbolTable* symbols = nullptr;
  bool allow_div = false;     // (div t k)
  bool allow_primes = false;  // x' as index 1
  bool allow_indexed = false; // x@k as printed for unrolled copies
};

Formula parse_formula(const SExpr& e, const FormulaSyntax& syntax);
Formula parse_formula(std::string_view text, const FormulaSyntax& syntax);

struct Script {
  Theory logic = Theory::LIA;
  std::vector<Symbol> declarations;
  std::vector<Partition> partitions;  // in assertion order

  enum class Command { Interpolate, TreeInterpolate };
  Command command = Command::Interpolate;
  std::vector<std::string> sequence;  // get-interpolants ids
  std::vector<std::pair<std::string, std::optional<std::string>>> tree;  // (id, parent), nullopt = root

  const Partition& partition(const std::string& id) const;
  /// The tree command as a query over the named partitions.
  TreeQuery tree_query() const;
  std::vector<Partition> sequence_parts() const;
};

Script parse_script(std::string_view text);

struct SystemFile {
  TransitionSystem system;
  std::optional<Formula> invariant;  // (invariant f), ÷ allowed
  SymbolTable symbols;
};

SystemFile parse_system(std::string_view text);

/// One formula per non-blank line over the system's state variables.
std::vector<Formula> parse_predicates(std::string_view text, const SymbolTable& symbols);

}  // namespace interpolmc
