// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "interpolmc/term.hpp"

namespace interpolmc {

/// Literal kinds of the NNF language. NotDivides is the negated
/// divisibility literal; every other negation is expressible with the
/// remaining kinds.
enum class AtomKind { Leq0, Lt0, Eq0, Neq0, Divides, NotDivides };

/// 0 <= t, 0 < t, t = 0, t != 0, k | t or not k | t.
struct Atom {
  AtomKind kind = AtomKind::Leq0;
  ExtTerm term;
  BigInt modulus = 1;  // only meaningful for Divides / NotDivides

  static Atom leq0(ExtTerm t) { return {AtomKind::Leq0, std::move(t), 1}; }
  static Atom lt0(ExtTerm t) { return {AtomKind::Lt0, std::move(t), 1}; }
  static Atom eq0(ExtTerm t) { return {AtomKind::Eq0, std::move(t), 1}; }
  static Atom neq0(ExtTerm t) { return {AtomKind::Neq0, std::move(t), 1}; }
  static Atom divides(BigInt k, ExtTerm t) { return {AtomKind::Divides, std::move(t), std::move(k)}; }

  bool is_inequality() const { return kind == AtomKind::Leq0 || kind == AtomKind::Lt0; }
  const LinTerm& linear() const { return term.linear(); }

  bool evaluate(const Assignment& m) const;
  Atom negated() const;
  Atom map_symbols(const std::function<Symbol(const Symbol&)>& f) const;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && a.modulus == b.modulus && a.term == b.term;
  }
};

/// Immutable quantifier-free formula in negation normal form.
class Formula {
 public:
  enum class Kind { True, False, Atom, And, Or };

  Formula();  // true

  static Formula top();
  static Formula bottom();
  static Formula atom(Atom a);
  /// Flattens nested conjunctions and absorbs true/false children.
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);

  static Formula leq(const ExtTerm& lhs, const ExtTerm& rhs);  // lhs <= rhs
  static Formula lt(const ExtTerm& lhs, const ExtTerm& rhs);
  static Formula eq(const ExtTerm& lhs, const ExtTerm& rhs);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const Atom& atom() const;
  const std::vector<Formula>& children() const;

  bool evaluate(const Assignment& m) const;
  SymbolSet symbols() const;
  void collect_symbols(SymbolSet& out) const;
  bool has_div() const;

  Formula map_symbols(const std::function<Symbol(const Symbol&)>& f) const;
  /// Adds `delta` to the index of every symbol.
  Formula shifted(int delta) const;

  /// Replaces atoms with constant terms by true/false.
  Formula fold_constants() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// NNF negation.
Formula negate(const Formula& f);


}  // namespace interpolmc
