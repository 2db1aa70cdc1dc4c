// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "interpolmc/errors.hpp"

namespace interpolmc {

namespace {

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw InputError(msg, e.line, e.column); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(expr());
      skip();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr expr() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = text_[pos_];
    if (c == ')') throw InputError("unexpected ')'", line_, col_);
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw InputError("unbalanced '('", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.list.push_back(expr());
      }
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool is_head(const SExpr& e, std::string_view head) {
  return e.is_list && !e.list.empty() && !e.list[0].is_list && e.list[0].atom == head;
}

bool is_numeral(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_decimal(const std::string& s) {
  auto dot = s.find('.');
  return dot != std::string::npos && dot > 0 && dot + 1 < s.size() && is_numeral(s.substr(0, dot)) &&
         is_numeral(s.substr(dot + 1));
}

Rational decimal_value(const std::string& s) {
  auto dot = s.find('.');
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  BigInt den = 1;
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return make_rational(BigInt(digits), den);
}

void check_name(const SExpr& e) {
  const std::string& n = e.atom;
  if (e.is_list || n.empty()) fail(e, "expected a symbol name");
  if (std::isdigit(static_cast<unsigned char>(n[0])) || n[0] == '-' || n[0] == ':') fail(e, "invalid symbol name '" + n + "'");
  if (n.find_first_of("!@'|\"") != std::string::npos) fail(e, "symbol name '" + n + "' uses a reserved character");
  static const std::set<std::string> reserved{"and", "or", "not", "true", "false", "div", "divisible", "distinct"};
  if (reserved.contains(n)) fail(e, "symbol name '" + n + "' is reserved");
}

Sort parse_sort(const SExpr& e) {
  if (!e.is_list && e.atom == "Int") return Sort::Int;
  if (!e.is_list && e.atom == "Real") return Sort::Real;
  fail(e, "expected sort Int or Real");
}

class FormulaParser {
 public:
  explicit FormulaParser(const FormulaSyntax& syntax) : syntax_(syntax) {}

  Formula formula(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "true") return Formula::top();
      if (e.atom == "false") return Formula::bottom();
      fail(e, "expected a formula, found '" + e.atom + "'");
    }
    if (e.list.empty() || e.list[0].is_list) fail(e, "expected a formula");
    const std::string& op = e.list[0].atom;
    std::size_t n = e.list.size() - 1;
    auto arg = [&](std::size_t i) -> const SExpr& { return e.list[i + 1]; };
    auto arity = [&](std::size_t want) {
      if (n != want) fail(e, "'" + op + "' expects " + std::to_string(want) + " arguments");
    };
    if (op == "and" || op == "or") {
      std::vector<Formula> cs;
      for (std::size_t i = 0; i < n; ++i) cs.push_back(formula(arg(i)));
      return op == "and" ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
    }
    if (op == "not") {
      arity(1);
      return negate(formula(arg(0)));
    }
    if (op == "=>") {
      arity(2);
      return Formula::disj({negate(formula(arg(0))), formula(arg(1))});
    }
    if (op == "<=" || op == "<" || op == ">=" || op == ">" || op == "=" || op == "distinct") {
      arity(2);
      ExtTerm l = term(arg(0)), r = term(arg(1));
      if (op == "<=") return Formula::leq(l, r);
      if (op == "<") return Formula::lt(l, r);
      if (op == ">=") return Formula::leq(r, l);
      if (op == ">") return Formula::lt(r, l);
      if (op == "=") return Formula::eq(l, r);
      return negate(Formula::eq(l, r));
    }
    if (op == "divisible") {
      arity(2);
      BigInt k = positive_integer(arg(0));
      return Formula::atom(Atom::divides(k, term(arg(1))));
    }
    fail(e, "unknown formula operator '" + op + "'");
  }

  ExtTerm term(const SExpr& e) {
    if (!e.is_list) {
      if (is_numeral(e.atom)) return ExtTerm(Rational(BigInt(e.atom)));
      if (is_decimal(e.atom)) return ExtTerm(decimal_value(e.atom));
      return ExtTerm(LinTerm::var(symbol(e)));
    }
    if (e.list.empty() || e.list[0].is_list) fail(e, "expected a term");
    const std::string& op = e.list[0].atom;
    std::size_t n = e.list.size() - 1;
    auto arg = [&](std::size_t i) -> const SExpr& { return e.list[i + 1]; };
    if (op == "+") {
      ExtTerm sum;
      for (std::size_t i = 0; i < n; ++i) sum += term(arg(i));
      return sum;
    }
    if (op == "-") {
      if (n == 0) fail(e, "'-' expects arguments");
      if (n == 1) return -term(arg(0));
      ExtTerm out = term(arg(0));
      for (std::size_t i = 1; i < n; ++i) out -= term(arg(i));
      return out;
    }
    if (op == "*") {
      if (n == 0) fail(e, "'*' expects arguments");
      ExtTerm product(Rational(1));
      for (std::size_t i = 0; i < n; ++i) {
        ExtTerm f = term(arg(i));
        if (f.is_constant()) {
          product *= f.linear().constant();
        } else if (product.is_constant()) {
          Rational c = product.linear().constant();
          product = c * f;
        } else {
          fail(e, "nonlinear multiplication");
        }
      }
      return product;
    }
    if (op == "/") {
      if (n != 2) fail(e, "'/' expects 2 arguments");
      ExtTerm p = term(arg(0)), q = term(arg(1));
      if (!q.is_constant()) fail(e, "division by a non-constant");
      if (q.linear().constant() == 0) fail(e, "division by zero");
      return (1 / q.linear().constant()) * p;
    }
    if (op == "div") {
      if (!syntax_.allow_div) fail(e, "'div' is not allowed here");
      if (n != 2) fail(e, "'div' expects 2 arguments");
      ExtTerm num = term(arg(0));
      if (!num.is_integral()) fail(e, "'div' of a non-integral term");
      return ExtTerm::quotient(num, positive_integer(arg(1)));
    }
    fail(e, "unknown term operator '" + op + "'");
  }

 private:
  BigInt positive_integer(const SExpr& e) {
    if (e.is_list || !is_numeral(e.atom) || BigInt(e.atom) < 1) fail(e, "expected a positive integer literal");
    return BigInt(e.atom);
  }

  Symbol symbol(const SExpr& e) {
    std::string name = e.atom;
    unsigned index = 0;
    if (syntax_.allow_primes && !name.empty() && name.back() == '\'') {
      name.pop_back();
      index = 1;
    } else if (auto at = name.find('@'); syntax_.allow_indexed && at != std::string::npos) {
      std::string idx = name.substr(at + 1);
      if (!is_numeral(idx) || idx.size() > 9) fail(e, "invalid symbol index in '" + name + "'");
      index = static_cast<unsigned>(std::stoul(idx));
      name = name.substr(0, at);
    }
    auto it = syntax_.symbols == nullptr ? SymbolTable::const_iterator{} : syntax_.symbols->find(name);
    if (syntax_.symbols == nullptr || it == syntax_.symbols->end()) fail(e, "undeclared symbol '" + e.atom + "'");
    return Symbol(name, it->second, index);
  }

  const FormulaSyntax& syntax_;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) { return Lexer(text).all(); }

Formula parse_formula(const SExpr& e, const FormulaSyntax& syntax) { return FormulaParser(syntax).formula(e); }

Formula parse_formula(std::string_view text, const FormulaSyntax& syntax) {
  auto es = parse_sexprs(text);
  if (es.size() != 1) throw InputError("expected exactly one formula");
  return parse_formula(es.front(), syntax);
}

const Partition& Script::partition(const std::string& id) const {
  for (const auto& p : partitions) {
    if (p.id == id) return p;
  }
  throw InputError("unknown assertion name '" + id + "'");
}

std::vector<Partition> Script::sequence_parts() const {
  std::vector<Partition> out;
  for (const auto& id : sequence) out.push_back(partition(id));
  return out;
}

TreeQuery Script::tree_query() const {
  TreeQuery q;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < tree.size(); ++i) pos[tree[i].first] = i;
  for (const auto& [id, parent] : tree) {
    std::optional<std::size_t> p;
    if (parent) {
      auto it = pos.find(*parent);
      if (it == pos.end()) throw InputError("tree parent '" + *parent + "' is not a tree node");
      p = it->second;
    }
    q.nodes.push_back({partition(id), p});
  }
  q.validate();
  return q;
}

Script parse_script(std::string_view text) {
  Script s;
  SymbolTable table;
  bool have_logic = false, have_command = false;
  FormulaSyntax syntax{&table, false, false, false};

  for (const auto& e : parse_sexprs(text)) {
    if (!e.is_list || e.list.empty() || e.list[0].is_list) fail(e, "expected a command");
    const std::string& cmd = e.list[0].atom;
    if (have_command) fail(e, "commands after the interpolation command");
    if (cmd == "set-logic") {
      if (e.list.size() != 2 || e.list[1].is_list) fail(e, "malformed set-logic");
      if (e.list[1].atom == "QF_LIA") {
        s.logic = Theory::LIA;
      } else if (e.list[1].atom == "QF_LRA") {
        s.logic = Theory::LRA;
      } else {
        fail(e.list[1], "unsupported logic '" + e.list[1].atom + "'");
      }
      have_logic = true;
    } else if (cmd == "declare-const") {
      if (e.list.size() != 3) fail(e, "malformed declare-const");
      check_name(e.list[1]);
      const std::string& name = e.list[1].atom;
      if (table.contains(name)) fail(e.list[1], "symbol '" + name + "' declared twice");
      Sort sort = parse_sort(e.list[2]);
      table[name] = sort;
      s.declarations.emplace_back(name, sort);
    } else if (cmd == "assert") {
      if (e.list.size() != 2) fail(e, "malformed assert");
      const SExpr& body = e.list[1];
      if (!is_head(body, "!") || body.list.size() != 4 || body.list[2].atom != ":named" || body.list[3].is_list) {
        fail(body, "assertions must have the form (! <formula> :named <id>)");
      }
      std::string id = body.list[3].atom;
      if (std::any_of(s.partitions.begin(), s.partitions.end(), [&](const Partition& p) { return p.id == id; })) {
        fail(body.list[3], "assertion name '" + id + "' used twice");
      }
      Partition p{id, parse_formula(body.list[1], syntax), {}};
      p.declared = p.formula.symbols();
      s.partitions.push_back(std::move(p));
    } else if (cmd == "get-interpolants") {
      if (e.list.size() < 3) fail(e, "get-interpolants needs at least two names");
      for (std::size_t i = 1; i < e.list.size(); ++i) {
        if (e.list[i].is_list) fail(e.list[i], "expected an assertion name");
        s.sequence.push_back(e.list[i].atom);
      }
      s.command = Script::Command::Interpolate;
      have_command = true;
    } else if (cmd == "get-tree-interpolants") {
      if (e.list.size() < 2) fail(e, "get-tree-interpolants needs at least one node");
      for (std::size_t i = 1; i < e.list.size(); ++i) {
        const SExpr& n = e.list[i];
        if (!n.is_list || n.list.size() != 2 || n.list[0].is_list || n.list[1].is_list) {
          fail(n, "tree nodes have the form (<id> <parent-id|root>)");
        }
        std::optional<std::string> parent;
        if (n.list[1].atom != "root") parent = n.list[1].atom;
        s.tree.emplace_back(n.list[0].atom, parent);
      }
      s.command = Script::Command::TreeInterpolate;
      have_command = true;
    } else {
      fail(e.list[0], "unknown command '" + cmd + "'");
    }
  }
  if (!have_command) throw InputError("no command");
  if (!have_logic) throw InputError("missing set-logic");

  // every named assertion takes part, each exactly once
  std::vector<std::string> used = s.command == Script::Command::Interpolate ? s.sequence : std::vector<std::string>{};
  for (const auto& [id, parent] : s.tree) used.push_back(id);
  std::set<std::string> seen;
  for (const auto& id : used) {
    s.partition(id);
    if (!seen.insert(id).second) throw InputError("assertion '" + id + "' listed twice");
  }
  for (const auto& p : s.partitions) {
    if (!seen.contains(p.id)) throw InputError("assertion '" + p.id + "' is not used by the command");
  }
  for (const auto& d : s.declarations) {
    if (d.sort != theory_sort(s.logic)) {
      throw InputError("symbol '" + d.name + "' has sort " + std::string(sort_name(d.sort)) + " in " +
                       std::string(theory_name(s.logic)));
    }
  }
  if (s.command == Script::Command::TreeInterpolate) s.tree_query();
  return s;
}

SystemFile parse_system(std::string_view text) {
  auto es = parse_sexprs(text);
  if (es.empty()) throw InputError("no system");
  if (es.size() != 1) fail(es[1], "unexpected input after the system");
  const SExpr& e = es.front();
  if (!is_head(e, "system")) fail(e, "expected (system ...)");

  SystemFile out;
  TransitionSystem& sys = out.system;
  std::optional<SExpr> init, trans, error, invariant;
  bool have_vars = false;
  for (std::size_t i = 1; i < e.list.size(); ++i) {
    const SExpr& c = e.list[i];
    if (!c.is_list || c.list.empty() || c.list[0].is_list) fail(c, "expected a system clause");
    const std::string& kind = c.list[0].atom;
    if (kind == "vars") {
      if (have_vars) fail(c, "duplicate vars clause");
      have_vars = true;
      if (c.list.size() < 2) fail(c, "vars needs at least one variable");
      for (std::size_t j = 1; j < c.list.size(); ++j) {
        const SExpr& v = c.list[j];
        if (!v.is_list || v.list.size() != 2) fail(v, "variables have the form (<name> <sort>)");
        check_name(v.list[0]);
        if (out.symbols.contains(v.list[0].atom)) fail(v.list[0], "variable '" + v.list[0].atom + "' declared twice");
        Sort sort = parse_sort(v.list[1]);
        out.symbols[v.list[0].atom] = sort;
        sys.vars.emplace_back(v.list[0].atom, sort);
      }
      continue;
    }
    std::optional<SExpr>* slot = kind == "init"        ? &init
                                 : kind == "trans"     ? &trans
                                 : kind == "error"     ? &error
                                 : kind == "invariant" ? &invariant
                                                       : nullptr;
    if (slot == nullptr) fail(c.list[0], "unknown system clause '" + kind + "'");
    if (slot->has_value()) fail(c, "duplicate " + kind + " clause");
    if (c.list.size() != 2) fail(c, kind + " takes one formula");
    *slot = c.list[1];
  }
  if (!have_vars) fail(e, "missing vars clause");
  if (!init || !trans || !error) fail(e, "a system needs init, trans and error clauses");

  bool any_int = false, any_real = false;
  for (const auto& v : sys.vars) (v.sort == Sort::Int ? any_int : any_real) = true;
  if (any_int && any_real) fail(e, "mixed Int and Real variables");
  sys.theory = any_real ? Theory::LRA : Theory::LIA;

  FormulaSyntax state{&out.symbols, false, false, false};
  FormulaSyntax step{&out.symbols, false, true, false};
  sys.init = parse_formula(*init, state);
  sys.trans = parse_formula(*trans, step);
  sys.error = parse_formula(*error, state);
  if (invariant) {
    FormulaSyntax inv{&out.symbols, sys.theory == Theory::LIA, false, false};
    out.invariant = parse_formula(*invariant, inv);
  }
  sys.validate();
  return out;
}

std::vector<Formula> parse_predicates(std::string_view text, const SymbolTable& symbols) {
  FormulaSyntax syntax{&symbols, false, false, false};
  std::vector<Formula> out;
  for (const auto& e : parse_sexprs(text)) out.push_back(parse_formula(e, syntax));
  return out;
}

}  // namespace interpolmc
