// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "interpolmc/arith.hpp"
#include "interpolmc/symbol.hpp"

namespace interpolmc {

using Monomial = std::pair<Symbol, Rational>;

/// Exact-rational linear combination of symbols plus a constant. Zero
/// coefficients are never stored; iteration follows the canonical symbol
/// order.
class LinTerm {
 public:
  LinTerm() = default;
  explicit LinTerm(Rational constant) : constant_(std::move(constant)) {}

  static LinTerm var(const Symbol& s, const Rational& coeff = 1);

  const std::map<Symbol, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(const Symbol& s) const;

  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

  void add(const Symbol& s, const Rational& c);
  void add_constant(const Rational& c) { constant_ += c; }

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rational& c);

  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(const Rational& c, LinTerm a) { return a *= c; }
  LinTerm operator-() const { return Rational(-1) * *this; }

  friend bool operator==(const LinTerm&, const LinTerm&) = default;

  Rational evaluate(const Assignment& m) const;
  void collect_symbols(SymbolSet& out) const;
  LinTerm map_symbols(const std::function<Symbol(const Symbol&)>& f) const;

  /// True when every coefficient and the constant are integers.
  bool is_integral() const;

 private:
  std::map<Symbol, Rational> coeffs_;
  Rational constant_;
};

/// Sums the given summands, drops zero coefficients and orders symbols
/// canonically.
LinTerm normalize(const std::vector<Monomial>& summands, const Rational& constant);
LinTerm normalize(const LinTerm& t);

class ExtTerm;

/// Euclidean quotient `numerator ÷ denominator` by a positive integer literal.
struct DivTerm {
  std::shared_ptr<const ExtTerm> numerator;
  BigInt denominator;
};

/// A linear term extended with integer-division subterms, the carrier of
/// LIA interpolants.
class ExtTerm {
 public:
  ExtTerm() = default;
  ExtTerm(LinTerm lin) : lin_(std::move(lin)) {}  // NOLINT(google-explicit-constructor)
  explicit ExtTerm(Rational c) : lin_(std::move(c)) {}

  const LinTerm& linear() const { return lin_; }
  const std::vector<std::pair<Rational, DivTerm>>& divs() const { return divs_; }

  bool is_linear() const { return divs_.empty(); }
  bool is_constant() const { return divs_.empty() && lin_.is_constant(); }

  ExtTerm& operator+=(const ExtTerm& o);
  ExtTerm& operator-=(const ExtTerm& o);
  ExtTerm& operator*=(const Rational& c);
  friend ExtTerm operator+(ExtTerm a, const ExtTerm& b) { return a += b; }
  friend ExtTerm operator-(ExtTerm a, const ExtTerm& b) { return a -= b; }
  friend ExtTerm operator*(const Rational& c, ExtTerm a) { return a *= c; }
  ExtTerm operator-() const { return Rational(-1) * *this; }

  void add_div(const Rational& coeff, DivTerm d);

  /// `u ÷ beta` with every summand whose coefficient beta divides pulled out
  /// of the quotient: (a*s + t) ÷ beta ~> (a/beta)*s + t ÷ beta.
  static ExtTerm quotient(const ExtTerm& u, const BigInt& beta);

  Rational evaluate(const Assignment& m) const;
  void collect_symbols(SymbolSet& out) const;
  /// Symbols that occur inside some ÷.
  void collect_div_symbols(SymbolSet& out) const;
  ExtTerm map_symbols(const std::function<Symbol(const Symbol&)>& f) const;

  /// Smallest positive factor that makes every top-level coefficient and the
  /// constant integral.
  BigInt integral_scale() const;
  bool is_integral() const;

  friend bool operator==(const ExtTerm& a, const ExtTerm& b) { return compare(a, b) == 0; }
  static int compare(const ExtTerm& a, const ExtTerm& b);

 private:
  LinTerm lin_;
  std::vector<std::pair<Rational, DivTerm>> divs_;  // sorted by DivTerm, nonzero coefficients
};

int compare(const DivTerm& a, const DivTerm& b);
int compare(const LinTerm& a, const LinTerm& b);

}  // namespace interpolmc
