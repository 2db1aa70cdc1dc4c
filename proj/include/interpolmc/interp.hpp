// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "interpolmc/lia.hpp"
#include "interpolmc/rewrite.hpp"

namespace interpolmc {

struct Partition {
  std::string id;
  Formula formula;
  SymbolSet declared;

  /// Symbols the formula mentions; the signature used by every checker.
  SymbolSet signature() const { return formula.symbols(); }
};

struct InterpOptions {
  LiaOptions lia;
};

/// The conjunction was satisfiable; `model` satisfies every input formula.
struct NotUnsat {
  Assignment model;
};

/// Binary: one formula. Sequence over n parts: n + 1 formulas, the first
/// true and the last false. Tree: one formula per node, in node order.
struct Separators {
  std::vector<Formula> formulas;
};

using InterpolationResult = std::variant<NotUnsat, Separators>;

/// Satisfiability of a conjunction of formulas by case splitting; a model
/// over the formulas' symbols when satisfiable. Formulas may contain ÷.
/// Throws ResourceOut when the integer search runs out of budget.
std::optional<Assignment> check_sat(const std::vector<Formula>& formulas, Theory theory,
                                    const InterpOptions& options = {});

InterpolationResult binary_interpolant(const Partition& a, const Partition& b, Theory theory,
                                       const InterpOptions& options = {});

/// Iterative scheme: I_i separates I_{i-1} & A_i from A_{i+1} & ... & A_n.
InterpolationResult sequence_interpolant(const std::vector<Partition>& parts, Theory theory,
                                         const InterpOptions& options = {});

struct TreeNode {
  Partition label;
  std::optional<std::size_t> parent;  // nullopt for the root
};

struct TreeQuery {
  std::vector<TreeNode> nodes;

  /// Index of the unique root; throws InputError unless the parent links
  /// form a single rooted tree.
  std::size_t validate() const;
  std::vector<std::size_t> children(std::size_t v) const;
};

/// Post-order over the tree; each node separates its label and its
/// children's interpolants from the current frontier (processed subtrees
/// already replaced by their interpolants, everything else by labels).
InterpolationResult tree_interpolant(const TreeQuery& query, Theory theory, const InterpOptions& options = {});

struct SeparatorReport {
  bool a_entails = false;    // A |= I
  bool b_refutes = false;    // I & B unsat
  bool signature = false;    // sig(I) within sig(A) & sig(B)
  bool ok() const { return a_entails && b_refutes && signature; }
};

SeparatorReport check_separator(const Partition& a, const Partition& b, const Formula& itp, Theory theory,
                                const InterpOptions& options = {});

/// Per-position verdicts of the sequence definition.
struct SequenceReport {
  bool first_valid = false;        // I_0 is valid
  bool last_unsat = false;         // I_n is unsatisfiable
  std::vector<bool> step;          // I_{i-1} & A_i |= I_i, i = 1..n
  std::vector<bool> signature;     // i = 0..n
  bool ok() const;
};

SequenceReport check_sequence(const std::vector<Partition>& parts, const std::vector<Formula>& itps, Theory theory,
                              const InterpOptions& options = {});

struct TreeReport {
  bool root_unsat = false;
  std::vector<bool> step;       // children's I & A(v) |= I(v)
  std::vector<bool> signature;  // sig(I(v)) within sig(subtree) & sig(outside)
  bool ok() const;
};

TreeReport check_tree(const TreeQuery& query, const std::vector<Formula>& itps, Theory theory,
                      const InterpOptions& options = {});

}  // namespace interpolmc
