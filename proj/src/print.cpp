// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/print.hpp"

#include <vector>

namespace interpolmc {

std::string print_literal(const Rational& q) {
  Rational a = abs(q);
  std::string body = is_integer(a) ? a.get_num().get_str()
                                   : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return q < 0 ? "(- " + body + ")" : body;
}

namespace {

std::string scaled(const Rational& c, const std::string& what) {
  if (c == 1) return what;
  return "(* " + print_literal(c) + " " + what + ")";
}

}  // namespace

std::string print_term(const ExtTerm& t) {
  std::vector<std::string> parts;
  for (const auto& [s, c] : t.linear().coeffs()) parts.push_back(scaled(c, to_string(s)));
  for (const auto& [c, d] : t.divs()) {
    parts.push_back(scaled(c, "(div " + print_term(*d.numerator) + " " + d.denominator.get_str() + ")"));
  }
  if (t.linear().constant() != 0 || parts.empty()) parts.push_back(print_literal(t.linear().constant()));
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

std::string print_atom(const Atom& a) {
  std::string t = print_term(a.term);
  switch (a.kind) {
    case AtomKind::Leq0: return "(<= 0 " + t + ")";
    case AtomKind::Lt0: return "(< 0 " + t + ")";
    case AtomKind::Eq0: return "(= " + t + " 0)";
    case AtomKind::Neq0: return "(not (= " + t + " 0))";
    case AtomKind::Divides: return "(divisible " + a.modulus.get_str() + " " + t + ")";
    case AtomKind::NotDivides: return "(not (divisible " + a.modulus.get_str() + " " + t + "))";
  }
  return t;
}

std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return "true";
    case Formula::Kind::False: return "false";
    case Formula::Kind::Atom: return print_atom(f.atom());
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind() == Formula::Kind::And ? "(and" : "(or";
      for (const auto& c : f.children()) out += " " + print_formula(c);
      return out + ")";
    }
  }
  return {};
}

std::string print_assignment(const Assignment& m) {
  std::string out = "(model";
  for (const auto& [s, v] : m) out += " (" + to_string(s) + " " + print_literal(v) + ")";
  return out + ")";
}

}  // namespace interpolmc
