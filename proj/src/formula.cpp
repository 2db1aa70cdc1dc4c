// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/formula.hpp"

#include <algorithm>
#include <optional>

namespace interpolmc {

bool Atom::evaluate(const Assignment& m) const {
  Rational v = term.evaluate(m);
  switch (kind) {
    case AtomKind::Leq0: return v >= 0;
    case AtomKind::Lt0: return v > 0;
    case AtomKind::Eq0: return v == 0;
    case AtomKind::Neq0: return v != 0;
    case AtomKind::Divides:
    case AtomKind::NotDivides: {
      bool d = is_integer(v) && mpz_divisible_p(v.get_num_mpz_t(), modulus.get_mpz_t()) != 0;
      return kind == AtomKind::Divides ? d : !d;
    }
  }
  return false;
}

Atom Atom::negated() const {
  switch (kind) {
    case AtomKind::Leq0: return lt0(-term);
    case AtomKind::Lt0: return leq0(-term);
    case AtomKind::Eq0: return neq0(term);
    case AtomKind::Neq0: return eq0(term);
    case AtomKind::Divides: return {AtomKind::NotDivides, term, modulus};
    case AtomKind::NotDivides: return {AtomKind::Divides, term, modulus};
  }
  return *this;
}

Atom Atom::map_symbols(const std::function<Symbol(const Symbol&)>& f) const {
  return {kind, term.map_symbols(f), modulus};
}

struct Formula::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::vector<Formula> children;
};


Formula::Formula() : node_(nullptr) {}

Formula Formula::top() { return Formula(std::make_shared<const Node>(Node{Kind::True, {}, {}})); }

Formula Formula::bottom() { return Formula(std::make_shared<const Node>(Node{Kind::False, {}, {}})); }

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

Formula Formula::conj(std::vector<Formula> children) {
  std::vector<Formula> flat;
  for (auto& c : children) {
    switch (c.kind()) {
      case Kind::True: break;
      case Kind::False: return bottom();
      case Kind::And:
        for (const auto& g : c.children()) flat.push_back(g);
        break;
      default: flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(flat)}));
}

Formula Formula::disj(std::vector<Formula> children) {
  std::vector<Formula> flat;
  for (auto& c : children) {
    switch (c.kind()) {
      case Kind::False: break;
      case Kind::True: return top();
      case Kind::Or:
        for (const auto& g : c.children()) flat.push_back(g);
        break;
      default: flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return bottom();
  if (flat.size() == 1) return flat.front();
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(flat)}));
}

Formula Formula::leq(const ExtTerm& lhs, const ExtTerm& rhs) { return atom(Atom::leq0(rhs - lhs)); }
Formula Formula::lt(const ExtTerm& lhs, const ExtTerm& rhs) { return atom(Atom::lt0(rhs - lhs)); }
Formula Formula::eq(const ExtTerm& lhs, const ExtTerm& rhs) { return atom(Atom::eq0(lhs - rhs)); }

Formula::Kind Formula::kind() const { return node_ ? node_->kind : Kind::True; }

const Atom& Formula::atom() const { return *node_->atom; }

const std::vector<Formula>& Formula::children() const {
  static const std::vector<Formula> empty;
  return node_ ? node_->children : empty;
}

bool Formula::evaluate(const Assignment& m) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return atom().evaluate(m);
    case Kind::And:
      return std::all_of(children().begin(), children().end(),
                         [&](const Formula& c) { return c.evaluate(m); });
    case Kind::Or:
      return std::any_of(children().begin(), children().end(),
                         [&](const Formula& c) { return c.evaluate(m); });
  }
  return false;
}

void Formula::collect_symbols(SymbolSet& out) const {
  if (kind() == Kind::Atom) {
    atom().term.collect_symbols(out);
    return;
  }
  for (const auto& c : children()) c.collect_symbols(out);
}

SymbolSet Formula::symbols() const {
  SymbolSet s;
  collect_symbols(s);
  return s;
}

bool Formula::has_div() const {
  if (kind() == Kind::Atom) return !atom().term.is_linear();
  return std::any_of(children().begin(), children().end(), [](const Formula& c) { return c.has_div(); });
}

Formula Formula::map_symbols(const std::function<Symbol(const Symbol&)>& f) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False: return *this;
    case Kind::Atom: return atom(atom().map_symbols(f));
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> cs;
      cs.reserve(children().size());
      for (const auto& c : children()) cs.push_back(c.map_symbols(f));
      return kind() == Kind::And ? conj(std::move(cs)) : disj(std::move(cs));
    }
  }
  return *this;
}

Formula Formula::shifted(int delta) const {
  if (delta == 0) return *this;
  return map_symbols([delta](const Symbol& s) {
    return s.with_index(static_cast<unsigned>(static_cast<int>(s.index) + delta));
  });
}

Formula Formula::fold_constants() const {
  switch (kind()) {
    case Kind::True:
    case Kind::False: return *this;
    case Kind::Atom:
      if (atom().term.is_constant()) return atom().evaluate({}) ? top() : bottom();
      return *this;
    case Kind::And:
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : children()) cs.push_back(c.fold_constants());
      return kind() == Kind::And ? conj(std::move(cs)) : disj(std::move(cs));
    }
  }
  return *this;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return true;
    case Formula::Kind::Atom: return a.atom() == b.atom();
    default: return a.children() == b.children();
  }
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return Formula::bottom();
    case Formula::Kind::False: return Formula::top();
    case Formula::Kind::Atom: return Formula::atom(f.atom().negated());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(negate(c));
      return f.kind() == Formula::Kind::And ? Formula::disj(std::move(cs)) : Formula::conj(std::move(cs));
    }
  }
  return f;
}

}  // namespace interpolmc
