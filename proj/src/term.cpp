// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/term.hpp"

#include <algorithm>

namespace interpolmc {

std::string_view sort_name(Sort s) { return s == Sort::Int ? "Int" : "Real"; }

std::string to_string(const Symbol& s) {
  if (s.index == 0) return s.name;
  return s.name + "@" + std::to_string(s.index);
}

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

LinTerm LinTerm::var(const Symbol& s, const Rational& coeff) {
  LinTerm t;
  t.add(s, coeff);
  return t;
}

Rational LinTerm::coeff(const Symbol& s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinTerm::add(const Symbol& s, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  for (const auto& [s, c] : o.coeffs_) add(s, c);
  constant_ += o.constant_;
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  for (const auto& [s, c] : o.coeffs_) add(s, -c);
  constant_ -= o.constant_;
  return *this;
}

LinTerm& LinTerm::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [s, v] : coeffs_) v *= c;
  constant_ *= c;
  return *this;
}

Rational LinTerm::evaluate(const Assignment& m) const {
  Rational v = constant_;
  for (const auto& [s, c] : coeffs_) {
    auto it = m.find(s);
    if (it != m.end()) v += c * it->second;
  }
  return v;
}

void LinTerm::collect_symbols(SymbolSet& out) const {
  for (const auto& [s, c] : coeffs_) out.insert(s);
}

LinTerm LinTerm::map_symbols(const std::function<Symbol(const Symbol&)>& f) const {
  LinTerm t(constant_);
  for (const auto& [s, c] : coeffs_) t.add(f(s), c);
  return t;
}

bool LinTerm::is_integral() const {
  if (!is_integer(constant_)) return false;
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& e) { return is_integer(e.second); });
}

LinTerm normalize(const std::vector<Monomial>& summands, const Rational& constant) {
  LinTerm t(constant);
  for (const auto& [s, c] : summands) t.add(s, c);
  return t;
}

LinTerm normalize(const LinTerm& t) { return t; }

int compare(const LinTerm& a, const LinTerm& b) {
  auto ia = a.coeffs().begin();
  auto ib = b.coeffs().begin();
  for (; ia != a.coeffs().end() && ib != b.coeffs().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (int c = cmp_rational(ia->second, ib->second)) return c;
  }
  if (ia != a.coeffs().end()) return 1;
  if (ib != b.coeffs().end()) return -1;
  return cmp_rational(a.constant(), b.constant());
}

int compare(const DivTerm& a, const DivTerm& b) {
  if (int c = cmp(a.denominator, b.denominator)) return c < 0 ? -1 : 1;
  return ExtTerm::compare(*a.numerator, *b.numerator);
}

int ExtTerm::compare(const ExtTerm& a, const ExtTerm& b) {
  if (int c = interpolmc::compare(a.lin_, b.lin_)) return c;
  std::size_t n = std::min(a.divs_.size(), b.divs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = interpolmc::compare(a.divs_[i].second, b.divs_[i].second)) return c;
    if (int c = cmp_rational(a.divs_[i].first, b.divs_[i].first)) return c;
  }
  if (a.divs_.size() != b.divs_.size()) return a.divs_.size() < b.divs_.size() ? -1 : 1;
  return 0;
}

void ExtTerm::add_div(const Rational& coeff, DivTerm d) {
  if (coeff == 0) return;
  auto it = std::lower_bound(divs_.begin(), divs_.end(), d, [](const auto& e, const DivTerm& key) {
    return interpolmc::compare(e.second, key) < 0;
  });
  if (it != divs_.end() && interpolmc::compare(it->second, d) == 0) {
    it->first += coeff;
    if (it->first == 0) divs_.erase(it);
    return;
  }
  divs_.insert(it, {coeff, std::move(d)});
}

ExtTerm& ExtTerm::operator+=(const ExtTerm& o) {
  lin_ += o.lin_;
  for (const auto& [c, d] : o.divs_) add_div(c, d);
  return *this;
}

ExtTerm& ExtTerm::operator-=(const ExtTerm& o) {
  lin_ -= o.lin_;
  for (const auto& [c, d] : o.divs_) add_div(-c, d);
  return *this;
}

ExtTerm& ExtTerm::operator*=(const Rational& c) {
  lin_ *= c;
  if (c == 0) {
    divs_.clear();
    return *this;
  }
  for (auto& e : divs_) e.first *= c;
  return *this;
}

namespace {

bool divisible(const Rational& coeff, const BigInt& beta) {
  if (!is_integer(coeff)) return false;
  return mpz_divisible_p(coeff.get_num_mpz_t(), beta.get_mpz_t()) != 0;
}

}  // namespace

ExtTerm ExtTerm::quotient(const ExtTerm& u, const BigInt& beta) {
  if (beta == 1) return u;
  Rational b(beta);
  ExtTerm pulled;
  ExtTerm rest;
  for (const auto& [s, c] : u.lin_.coeffs()) {
    if (divisible(c, beta)) {
      pulled.lin_.add(s, c / b);
    } else {
      rest.lin_.add(s, c);
    }
  }
  if (divisible(u.lin_.constant(), beta)) {
    pulled.lin_.add_constant(u.lin_.constant() / b);
  } else {
    rest.lin_.add_constant(u.lin_.constant());
  }
  for (const auto& [c, d] : u.divs_) {
    if (divisible(c, beta)) {
      pulled.add_div(c / b, d);
    } else {
      rest.add_div(c, d);
    }
  }
  if (rest.is_constant()) {
    pulled.lin_.add_constant(Rational(floor_of(rest.lin_.constant() / b)));
  } else {
    pulled.add_div(1, DivTerm{std::make_shared<const ExtTerm>(std::move(rest)), beta});
  }
  return pulled;
}

Rational ExtTerm::evaluate(const Assignment& m) const {
  Rational v = lin_.evaluate(m);
  for (const auto& [c, d] : divs_) {
    Rational num = d.numerator->evaluate(m);
    // Euclidean and floor division coincide for positive denominators.
    v += c * Rational(floor_of(num / Rational(d.denominator)));
  }
  return v;
}

void ExtTerm::collect_symbols(SymbolSet& out) const {
  lin_.collect_symbols(out);
  for (const auto& [c, d] : divs_) d.numerator->collect_symbols(out);
}

void ExtTerm::collect_div_symbols(SymbolSet& out) const {
  for (const auto& [c, d] : divs_) d.numerator->collect_symbols(out);
}

ExtTerm ExtTerm::map_symbols(const std::function<Symbol(const Symbol&)>& f) const {
  ExtTerm t(lin_.map_symbols(f));
  for (const auto& [c, d] : divs_) {
    t.add_div(c, DivTerm{std::make_shared<const ExtTerm>(d.numerator->map_symbols(f)), d.denominator});
  }
  return t;
}

BigInt ExtTerm::integral_scale() const {
  BigInt l = lin_.constant().get_den();
  for (const auto& [s, c] : lin_.coeffs()) l = lcm(l, c.get_den());
  for (const auto& [c, d] : divs_) l = lcm(l, c.get_den());
  return l;
}

bool ExtTerm::is_integral() const { return integral_scale() == 1; }

}  // namespace interpolmc
