// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/interp.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "interpolmc/errors.hpp"

namespace interpolmc {

namespace {

Atom falsum() { return Atom::leq0(ExtTerm(Rational(-1))); }

/// Literal atoms and pending disjunctions of one side of a case split.
struct Side {
  std::vector<Atom> units;
  std::vector<Formula> ors;  // leftmost-outermost first

  void absorb(const Formula& f, std::vector<Formula>& ors_out) {
    switch (f.kind()) {
      case Formula::Kind::True: return;
      case Formula::Kind::False: units.push_back(falsum()); return;
      case Formula::Kind::Atom: units.push_back(f.atom()); return;
      case Formula::Kind::And:
        for (const auto& c : f.children()) absorb(c, ors_out);
        return;
      case Formula::Kind::Or: ors_out.push_back(f); return;
    }
  }

  void add(const Formula& f) { absorb(f, ors); }

  /// Side with the first disjunction replaced by its `k`-th disjunct, whose
  /// own disjunctions take the replaced one's place.
  Side choose(std::size_t k) const {
    Side s;
    s.units = units;
    std::vector<Formula> nested;
    s.absorb(ors.front().children()[k], nested);
    s.ors = std::move(nested);
    s.ors.insert(s.ors.end(), ors.begin() + 1, ors.end());
    return s;
  }
};

struct Outcome {
  std::optional<Assignment> model;
  Formula itp;
};

class Splitter {
 public:
  Splitter(Theory theory, const InterpOptions& options, bool interpolate)
      : theory_(theory), options_(options), interpolate_(interpolate) {}

  Outcome run(const Side& a, const Side& b) {
    if (a.ors.empty() && b.ors.empty()) return leaf(a.units, b.units);
    // Prune when the literals alone are already contradictory; their
    // separator also separates the full sides.
    Outcome units = leaf(a.units, b.units);
    if (!units.model) return units;

    bool split_a = !a.ors.empty();
    const Side& side = split_a ? a : b;
    std::vector<Formula> parts;
    for (std::size_t k = 0; k < side.ors.front().children().size(); ++k) {
      Side chosen = side.choose(k);
      Outcome o = split_a ? run(chosen, b) : run(a, chosen);
      if (o.model) return o;
      parts.push_back(std::move(o.itp));
    }
    if (!interpolate_) return {};
    return {std::nullopt, split_a ? Formula::disj(std::move(parts)) : Formula::conj(std::move(parts))};
  }

 private:
  Outcome leaf(const std::vector<Atom>& a, const std::vector<Atom>& b) {
    std::vector<Atom> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    if (theory_ == Theory::LRA) {
      LraVerdict v = lra_check(all);
      if (auto* sat = std::get_if<LraSat>(&v)) return {concretize(all, sat->model), {}};
      if (!interpolate_) return {};
      return {std::nullopt, lra_interpolate(a, b, std::get<LraUnsat>(v).certificate)};
    }
    LiaVerdict v = lia_check(all, options_.lia);
    if (auto* sat = std::get_if<LiaSat>(&v)) return {sat->model, {}};
    if (std::holds_alternative<LiaResourceOut>(v)) throw ResourceOut("integer search exhausted its branch budget");
    if (!interpolate_) return {};
    return {std::nullopt, lia_interpolate(a, b, *std::get<LiaUnsat>(v).proof)};
  }

  Theory theory_;
  const InterpOptions& options_;
  bool interpolate_;
};

/// Model restricted to the input symbols, with symbols the chosen case
/// never constrained set to zero.
Assignment finish_model(const Assignment& raw, const std::vector<Formula>& inputs) {
  Assignment out;
  for (const auto& f : inputs) {
    for (const auto& s : f.symbols()) {
      auto it = raw.find(s);
      out.emplace(s, it == raw.end() ? Rational(0) : it->second);
    }
  }
  return out;
}

bool subset(const SymbolSet& s, const SymbolSet& of) {
  return std::all_of(s.begin(), s.end(), [&](const Symbol& x) { return of.contains(x); });
}

SymbolSet intersect(const SymbolSet& a, const SymbolSet& b) {
  SymbolSet out;
  for (const auto& s : a) {
    if (b.contains(s)) out.insert(s);
  }
  return out;
}

bool unsat(const std::vector<Formula>& fs, Theory theory, const InterpOptions& options) {
  return !check_sat(fs, theory, options).has_value();
}

}  // namespace

std::optional<Assignment> check_sat(const std::vector<Formula>& formulas, Theory theory,
                                    const InterpOptions& options) {
  FreshSymbols fresh("s");
  Side side;
  for (const auto& f : formulas) side.add(prepare(f, theory, fresh));
  Outcome o = Splitter(theory, options, false).run(side, Side{});
  if (!o.model) return std::nullopt;
  return finish_model(*o.model, formulas);
}

InterpolationResult binary_interpolant(const Partition& a, const Partition& b, Theory theory,
                                       const InterpOptions& options) {
  FreshSymbols fa("a"), fb("b");
  Side sa, sb;
  sa.add(prepare(a.formula, theory, fa));
  sb.add(prepare(b.formula, theory, fb));
  Outcome o = Splitter(theory, options, true).run(sa, sb);
  if (o.model) return NotUnsat{finish_model(*o.model, {a.formula, b.formula})};
  return Separators{{o.itp.fold_constants()}};
}

std::size_t TreeQuery::validate() const {
  std::optional<std::size_t> root;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const auto& p = nodes[v].parent;
    if (!p) {
      if (root) throw InputError("tree query has more than one root");
      root = v;
    } else if (*p >= nodes.size() || *p == v) {
      throw InputError("tree query node " + nodes[v].label.id + " has an invalid parent");
    }
  }
  if (!root) throw InputError("tree query has no root");
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    std::size_t u = v;
    for (std::size_t steps = 0; nodes[u].parent; ++steps) {
      if (steps > nodes.size()) throw InputError("tree query parent links contain a cycle");
      u = *nodes[u].parent;
    }
  }
  return *root;
}

std::vector<std::size_t> TreeQuery::children(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (nodes[u].parent == v) out.push_back(u);
  }
  return out;
}

namespace {

std::vector<std::size_t> post_order(const TreeQuery& q, std::size_t root) {
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    for (std::size_t c : q.children(v)) visit(c);
    order.push_back(v);
  };
  visit(root);
  return order;
}

std::vector<bool> subtree_mask(const TreeQuery& q, std::size_t v) {
  std::vector<bool> in(q.nodes.size(), false);
  for (std::size_t u = 0; u < q.nodes.size(); ++u) {
    for (std::optional<std::size_t> w = u; w; w = q.nodes[*w].parent) {
      if (*w == v) {
        in[u] = true;
        break;
      }
    }
  }
  return in;
}

}  // namespace

InterpolationResult tree_interpolant(const TreeQuery& query, Theory theory, const InterpOptions& options) {
  std::size_t root = query.validate();
  std::size_t n = query.nodes.size();
  std::vector<Formula> itp(n);
  // frontier[u]: what currently stands for u outside the processed region
  std::vector<std::optional<Formula>> frontier(n);
  for (std::size_t u = 0; u < n; ++u) frontier[u] = query.nodes[u].label.formula;

  bool first = true;
  for (std::size_t v : post_order(query, root)) {
    std::vector<Formula> a_parts{query.nodes[v].label.formula};
    for (std::size_t c : query.children(v)) {
      a_parts.push_back(itp[c]);
      frontier[c].reset();
    }
    if (v == root) {
      std::vector<Formula> all = a_parts;
      if (auto model = check_sat(all, theory, options)) {
        if (!first) throw std::logic_error("tree interpolation lost unsatisfiability at the root");
        return NotUnsat{*model};
      }
      itp[v] = Formula::bottom();
      break;
    }
    std::vector<bool> inside = subtree_mask(query, v);
    std::vector<Formula> b_parts;
    for (std::size_t u = 0; u < n; ++u) {
      if (!inside[u] && frontier[u]) b_parts.push_back(*frontier[u]);
    }
    Partition a{query.nodes[v].label.id, Formula::conj(a_parts), {}};
    Partition b{"rest", Formula::conj(b_parts), {}};
    InterpolationResult r = binary_interpolant(a, b, theory, options);
    if (auto* sat = std::get_if<NotUnsat>(&r)) {
      if (!first) throw std::logic_error("tree interpolation lost unsatisfiability");
      return *sat;
    }
    first = false;
    itp[v] = std::get<Separators>(r).formulas.front();
    frontier[v] = itp[v];
  }
  return Separators{std::move(itp)};
}

InterpolationResult sequence_interpolant(const std::vector<Partition>& parts, Theory theory,
                                         const InterpOptions& options) {
  if (parts.empty()) throw InputError("sequence interpolation needs at least one partition");
  // A chain A_1 -> A_2 -> ... -> A_n rooted at A_n.
  TreeQuery chain;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::optional<std::size_t> parent;
    if (i + 1 < parts.size()) parent = i + 1;
    chain.nodes.push_back({parts[i], parent});
  }
  InterpolationResult r = tree_interpolant(chain, theory, options);
  if (auto* sat = std::get_if<NotUnsat>(&r)) return *sat;
  std::vector<Formula> seq{Formula::top()};
  for (auto& f : std::get<Separators>(r).formulas) seq.push_back(std::move(f));
  return Separators{std::move(seq)};
}

SeparatorReport check_separator(const Partition& a, const Partition& b, const Formula& itp, Theory theory,
                                const InterpOptions& options) {
  SeparatorReport r;
  r.a_entails = unsat({a.formula, negate(itp)}, theory, options);
  r.b_refutes = unsat({itp, b.formula}, theory, options);
  r.signature = subset(itp.symbols(), intersect(a.signature(), b.signature()));
  return r;
}

bool SequenceReport::ok() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool x) { return x; }); };
  return first_valid && last_unsat && all(step) && all(signature);
}

SequenceReport check_sequence(const std::vector<Partition>& parts, const std::vector<Formula>& itps, Theory theory,
                              const InterpOptions& options) {
  if (itps.size() != parts.size() + 1) throw InputError("sequence interpolant has the wrong length");
  std::size_t n = parts.size();
  SequenceReport r;
  r.first_valid = unsat({negate(itps.front())}, theory, options);
  r.last_unsat = unsat({itps.back()}, theory, options);
  for (std::size_t i = 1; i <= n; ++i) {
    r.step.push_back(unsat({itps[i - 1], parts[i - 1].formula, negate(itps[i])}, theory, options));
  }
  for (std::size_t i = 0; i <= n; ++i) {
    SymbolSet prefix, suffix;
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& s : parts[j].signature()) (j < i ? prefix : suffix).insert(s);
    }
    r.signature.push_back(subset(itps[i].symbols(), intersect(prefix, suffix)));
  }
  return r;
}

bool TreeReport::ok() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool x) { return x; }); };
  return root_unsat && all(step) && all(signature);
}

TreeReport check_tree(const TreeQuery& query, const std::vector<Formula>& itps, Theory theory,
                      const InterpOptions& options) {
  std::size_t root = query.validate();
  std::size_t n = query.nodes.size();
  if (itps.size() != n) throw InputError("tree interpolant has the wrong number of labels");
  TreeReport r;
  r.root_unsat = unsat({itps[root]}, theory, options);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Formula> premise{query.nodes[v].label.formula, negate(itps[v])};
    for (std::size_t c : query.children(v)) premise.push_back(itps[c]);
    r.step.push_back(unsat(premise, theory, options));

    std::vector<bool> inside = subtree_mask(query, v);
    SymbolSet in, out;
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& s : query.nodes[u].label.signature()) (inside[u] ? in : out).insert(s);
    }
    r.signature.push_back(subset(itps[v].symbols(), intersect(in, out)));
  }
  return r;
}

}  // namespace interpolmc
