// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/rewrite.hpp"

#include <map>

#include "interpolmc/errors.hpp"
#include "interpolmc/print.hpp"

namespace interpolmc {

std::string_view theory_name(Theory t) { return t == Theory::LIA ? "QF_LIA" : "QF_LRA"; }

Symbol FreshSymbols::make(Sort sort, std::string_view stem) {
  return Symbol(std::string(stem) + "!" + tag_ + "!" + std::to_string(next_++), sort);
}

bool FreshSymbols::is_fresh(const Symbol& s) { return s.name.find('!') != std::string::npos; }

namespace {

void check_sorts(const Atom& a, Theory theory) {
  SymbolSet syms;
  a.term.collect_symbols(syms);
  for (const auto& s : syms) {
    if (s.sort != theory_sort(theory)) {
      throw InputError("mixed-sort atom: symbol " + to_string(s) + " has sort " +
                       std::string(sort_name(s.sort)) + " in " + std::string(theory_name(theory)));
    }
  }
}

Formula leq(LinTerm t) { return Formula::atom(Atom::leq0(ExtTerm(std::move(t)))); }
Formula lt(LinTerm t) { return Formula::atom(Atom::lt0(ExtTerm(std::move(t)))); }

Formula int_equation(const LinTerm& t) { return Formula::conj({leq(t), leq(-t)}); }

Formula rewrite_atom(const Atom& a, Theory theory, FreshSymbols& fresh) {
  if (!a.term.is_linear()) throw InputError("integer division must be eliminated before rewriting");
  check_sorts(a, theory);
  LinTerm t = a.term.linear();
  if (theory == Theory::LRA) {
    switch (a.kind) {
      case AtomKind::Leq0: return leq(t);
      case AtomKind::Lt0: return lt(t);
      case AtomKind::Eq0: return Formula::conj({leq(t), leq(-t)});
      case AtomKind::Neq0: return Formula::disj({lt(t), lt(-t)});
      case AtomKind::Divides:
      case AtomKind::NotDivides: throw InputError("divisibility requires integer sort");
    }
  }
  if (a.kind == AtomKind::Divides || a.kind == AtomKind::NotDivides) {
    if (!t.is_integral()) throw InputError("divisibility over a non-integral term: " + print_atom(a));
    if (a.modulus < 1) throw InputError("divisibility modulus must be positive");
    if (a.modulus == 1) return a.kind == AtomKind::Divides ? Formula::top() : Formula::bottom();
    Rational k(a.modulus);
    Symbol q = fresh.make(Sort::Int, "q");
    if (a.kind == AtomKind::Divides) return int_equation(t - LinTerm::var(q, k));
    Symbol r = fresh.make(Sort::Int, "r");
    return Formula::conj({int_equation(t - LinTerm::var(q, k) - LinTerm::var(r)), leq(LinTerm::var(r) - LinTerm(1)),
                          leq(LinTerm(k - 1) - LinTerm::var(r))});
  }
  t *= Rational(a.term.integral_scale());
  switch (a.kind) {
    case AtomKind::Leq0: return leq(t);
    case AtomKind::Lt0: return leq(t - LinTerm(1));
    case AtomKind::Eq0: return int_equation(t);
    case AtomKind::Neq0: return Formula::disj({leq(t - LinTerm(1)), leq(-t - LinTerm(1))});
    default: break;
  }
  return Formula::top();
}

struct DivLess {
  bool operator()(const DivTerm& a, const DivTerm& b) const { return compare(a, b) < 0; }
};

class DivEliminator {
 public:
  explicit DivEliminator(FreshSymbols& fresh) : fresh_(fresh) {}

  ExtTerm linearize(const ExtTerm& t) {
    if (t.is_linear()) return t;
    ExtTerm out(t.linear());
    for (const auto& [c, d] : t.divs()) out += c * ExtTerm(LinTerm::var(quotient_symbol(d)));
    return out;
  }

  Formula run(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False: return f;
      case Formula::Kind::Atom: {
        const Atom& a = f.atom();
        if (a.term.is_linear()) return f;
        return Formula::atom(Atom{a.kind, linearize(a.term), a.modulus});
      }
      default: {
        std::vector<Formula> cs;
        for (const auto& c : f.children()) cs.push_back(run(c));
        return f.kind() == Formula::Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
      }
    }
  }

  std::vector<Formula>& definitions() { return defs_; }

 private:
  Symbol quotient_symbol(const DivTerm& d) {
    if (auto it = memo_.find(d); it != memo_.end()) return it->second;
    ExtTerm num = linearize(*d.numerator);
    Symbol q = fresh_.make(Sort::Int, "q");
    Symbol r = fresh_.make(Sort::Int, "r");
    Rational beta(d.denominator);
    ExtTerm rv(LinTerm::var(r));
    defs_.push_back(Formula::atom(Atom::eq0(num - beta * ExtTerm(LinTerm::var(q)) - rv)));
    defs_.push_back(Formula::atom(Atom::leq0(rv)));
    defs_.push_back(Formula::atom(Atom::leq0(ExtTerm(beta - 1) - rv)));
    memo_.emplace(d, q);
    return q;
  }

  FreshSymbols& fresh_;
  std::map<DivTerm, Symbol, DivLess> memo_;
  std::vector<Formula> defs_;
};

}  // namespace

Formula rewrite_literals(const Formula& f, Theory theory, FreshSymbols& fresh) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Atom: return rewrite_atom(f.atom(), theory, fresh);
    default: {
      std::vector<Formula> cs;
      for (const auto& c : f.children()) cs.push_back(rewrite_literals(c, theory, fresh));
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
  }
}

Formula eliminate_div(const Formula& f, FreshSymbols& fresh) {
  if (!f.has_div()) return f;
  DivEliminator elim(fresh);
  Formula body = elim.run(f);
  std::vector<Formula> parts{body};
  for (auto& d : elim.definitions()) parts.push_back(std::move(d));
  return Formula::conj(std::move(parts));
}

Formula prepare(const Formula& f, Theory theory, FreshSymbols& fresh) {
  return rewrite_literals(eliminate_div(f, fresh), theory, fresh);
}

}  // namespace interpolmc
