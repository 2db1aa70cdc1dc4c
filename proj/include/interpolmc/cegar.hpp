// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "interpolmc/ts.hpp"

namespace interpolmc {

/// Predicates over the state variables, deduplicated by printed form.
class PredicateSet {
 public:
  PredicateSet() = default;
  explicit PredicateSet(const std::vector<Formula>& preds) {
    for (const auto& p : preds) add(p);
  }

  /// False when an equal predicate is already present or p is constant.
  bool add(const Formula& p);
  const std::vector<Formula>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  std::vector<Formula> items_;
  std::set<std::string> printed_;
};

/// Abstract state: predicate i is bit (k-1-i), so numeric order on states
/// is lexicographic order on bit-vectors.
using AbstractState = std::uint32_t;

/// p^-1(s): conjunction of the predicates (or their negations) s fixes.
Formula concretization(const PredicateSet& preds, AbstractState s);

struct AbstractTS {
  unsigned k = 0;
  std::set<AbstractState> initial;
  std::set<std::pair<AbstractState, AbstractState>> transitions;
  std::set<AbstractState> error;
  std::set<AbstractState> feasible;  // s with p^-1(s) satisfiable
};

struct AbstractionOptions {
  unsigned max_predicates = 12;
  InterpOptions interp;
};

/// Existential abstraction by satisfiability queries; only states with a
/// satisfiable concretization are considered. Throws InputError when the
/// predicate cap is exceeded.
AbstractTS boolean_abstract(const TransitionSystem& sys, const PredicateSet& preds,
                            const AbstractionOptions& options = {});

struct AbstractPath {
  std::vector<AbstractState> states;
};

struct AbstractSafe {
  std::set<AbstractState> reachable;
};

using ReachResult = std::variant<AbstractPath, AbstractSafe>;

/// Breadth-first search, successors in ascending order: a shortest error
/// path, lexicographically least among the BFS-tree paths.
ReachResult abstract_reach(const AbstractTS& abs);

struct Feasible {
  Trace trace;
};

struct Spurious {
  std::vector<Partition> parts;  // B, TR steps, E: m + 1 partitions
};

using ConcretizeResult = std::variant<Feasible, Spurious>;

/// Path formula for the abstract path. Each step is conjoined with the
/// concretization of its abstract state unless `paper_literal` is set.
ConcretizeResult concretize(const TransitionSystem& sys, const PredicateSet& preds, const AbstractPath& path,
                            bool paper_literal = false, const InterpOptions& options = {});

/// Adds I_1..I_m of a sequence interpolant I_0..I_{m+1}, each renamed back
/// to the state variables. Returns whether a new predicate was added.
bool refine(PredicateSet& preds, const std::vector<Formula>& seq);

struct CegarConfig {
  unsigned max_refinements = 10;
  bool paper_literal = false;
  PredicateSet initial;
  AbstractionOptions abstraction;
};

struct CegarStats {
  unsigned refinements = 0;
  PredicateSet predicates;
};

VerificationResult cegar_loop(const TransitionSystem& sys, const CegarConfig& cfg = {}, CegarStats* stats = nullptr);

}  // namespace interpolmc
