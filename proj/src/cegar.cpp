// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/cegar.hpp"

#include <deque>
#include <functional>
#include <map>

#include "interpolmc/errors.hpp"
#include "interpolmc/print.hpp"

namespace interpolmc {

bool PredicateSet::add(const Formula& p) {
  Formula f = p.fold_constants();
  if (f.is_true() || f.is_false()) return false;
  if (!printed_.insert(print_formula(f)).second) return false;
  items_.push_back(f);
  return true;
}

Formula concretization(const PredicateSet& preds, AbstractState s) {
  std::size_t k = preds.size();
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < k; ++i) {
    bool bit = (s >> (k - 1 - i)) & 1U;
    parts.push_back(bit ? preds.items()[i] : negate(preds.items()[i]));
  }
  return Formula::conj(std::move(parts));
}

namespace {

/// All s such that context & p^-1(s) (shifted to `step`) is satisfiable,
/// found by fixing one predicate at a time and pruning unsatisfiable
/// prefixes.
std::set<AbstractState> satisfying_states(const std::vector<Formula>& context, const PredicateSet& preds,
                                          unsigned step, Theory theory, const InterpOptions& options) {
  std::set<AbstractState> out;
  std::size_t k = preds.size();
  std::vector<Formula> fixed = context;
  std::function<void(std::size_t, AbstractState)> go = [&](std::size_t i, AbstractState s) {
    if (!check_sat(fixed, theory, options)) return;
    if (i == k) {
      out.insert(s);
      return;
    }
    for (unsigned bit : {0U, 1U}) {
      const Formula& p = preds.items()[i];
      fixed.push_back(at_step(bit ? p : negate(p), step));
      go(i + 1, (s << 1) | bit);
      fixed.pop_back();
    }
  };
  go(0, 0);
  return out;
}

}  // namespace

AbstractTS boolean_abstract(const TransitionSystem& sys, const PredicateSet& preds, const AbstractionOptions& options) {
  if (preds.size() > options.max_predicates || preds.size() > 31) {
    throw InputError("predicate set exceeds the cap of " + std::to_string(options.max_predicates));
  }
  AbstractTS abs;
  abs.k = static_cast<unsigned>(preds.size());
  abs.feasible = satisfying_states({}, preds, 0, sys.theory, options.interp);
  for (AbstractState s : abs.feasible) {
    Formula cs = concretization(preds, s);
    if (check_sat({sys.init, cs}, sys.theory, options.interp)) abs.initial.insert(s);
    if (check_sat({sys.error, cs}, sys.theory, options.interp)) abs.error.insert(s);
    for (AbstractState t : satisfying_states({cs, sys.trans}, preds, 1, sys.theory, options.interp)) {
      abs.transitions.emplace(s, t);
    }
  }
  return abs;
}

ReachResult abstract_reach(const AbstractTS& abs) {
  std::map<AbstractState, std::optional<AbstractState>> parent;
  std::deque<AbstractState> queue;
  auto path_to = [&](AbstractState s) {
    AbstractPath p;
    for (std::optional<AbstractState> u = s; u; u = parent.at(*u)) p.states.push_back(*u);
    std::reverse(p.states.begin(), p.states.end());
    return p;
  };
  for (AbstractState s : abs.initial) {
    parent.emplace(s, std::nullopt);
    queue.push_back(s);
  }
  while (!queue.empty()) {
    AbstractState s = queue.front();
    queue.pop_front();
    if (abs.error.contains(s)) return path_to(s);
    for (auto it = abs.transitions.lower_bound({s, 0}); it != abs.transitions.end() && it->first == s; ++it) {
      if (parent.emplace(it->second, s).second) queue.push_back(it->second);
    }
  }
  AbstractSafe safe;
  for (const auto& [s, p] : parent) safe.reachable.insert(s);
  return safe;
}

ConcretizeResult concretize(const TransitionSystem& sys, const PredicateSet& preds, const AbstractPath& path,
                            bool paper_literal, const InterpOptions& options) {
  if (path.states.empty()) throw InputError("empty abstract path");
  auto guard = [&](std::size_t i) {
    return paper_literal ? Formula::top() : at_step(concretization(preds, path.states[i]), static_cast<unsigned>(i));
  };
  std::vector<Partition> parts;
  parts.push_back({"B", Formula::conj({at_step(sys.init, 0), guard(0)}), {}});
  for (std::size_t i = 1; i < path.states.size(); ++i) {
    parts.push_back(
        {"TR" + std::to_string(i), Formula::conj({at_step(sys.trans, static_cast<unsigned>(i - 1)), guard(i)}), {}});
  }
  unsigned last = static_cast<unsigned>(path.states.size() - 1);
  parts.push_back({"E", at_step(sys.error, last), {}});

  std::vector<Formula> all;
  for (const auto& p : parts) all.push_back(p.formula);
  if (auto model = check_sat(all, sys.theory, options)) return Feasible{extract_trace(sys, *model, last)};
  return Spurious{std::move(parts)};
}

bool refine(PredicateSet& preds, const std::vector<Formula>& seq) {
  bool progress = false;
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    // I_i sits between steps i-1 and i of the path formula
    Formula p = seq[i].shifted(-static_cast<int>(i - 1));
    for (const auto& s : p.symbols()) {
      if (s.index != 0) throw std::logic_error("interpolant mentions a non-shared step");
    }
    progress = preds.add(p) || progress;
  }
  return progress;
}

VerificationResult cegar_loop(const TransitionSystem& sys, const CegarConfig& cfg, CegarStats* stats) {
  CegarStats local;
  CegarStats& st = stats != nullptr ? *stats : local;
  st = {};
  st.predicates = cfg.initial;
  for (;;) {
    if (st.predicates.size() > cfg.abstraction.max_predicates) return Unknown{"predicate cap reached"};
    AbstractTS abs = boolean_abstract(sys, st.predicates, cfg.abstraction);
    ReachResult reach = abstract_reach(abs);
    if (auto* safe = std::get_if<AbstractSafe>(&reach)) {
      std::vector<Formula> cases;
      for (AbstractState s : safe->reachable) cases.push_back(concretization(st.predicates, s));
      Formula inv = Formula::disj(std::move(cases)).fold_constants();
      if (!check_inductive(sys, inv, cfg.abstraction.interp).ok()) {
        return Unknown{"abstract invariant failed the inductiveness check"};
      }
      return Safe{inv};
    }
    const auto& path = std::get<AbstractPath>(reach);
    ConcretizeResult c = concretize(sys, st.predicates, path, cfg.paper_literal, cfg.abstraction.interp);
    if (auto* f = std::get_if<Feasible>(&c)) return Unsafe{f->trace};
    if (st.refinements >= cfg.max_refinements) return Unknown{"refinement limit reached"};
    const auto& parts = std::get<Spurious>(c).parts;
    InterpolationResult seq = sequence_interpolant(parts, sys.theory, cfg.abstraction.interp);
    if (!std::holds_alternative<Separators>(seq)) throw std::logic_error("spurious path formula is satisfiable");
    ++st.refinements;
    if (!refine(st.predicates, std::get<Separators>(seq).formulas)) return Unknown{"refinement-stuck"};
  }
}

}  // namespace interpolmc
