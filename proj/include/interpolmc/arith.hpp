// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace interpolmc {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws DivisionByZero when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

BigInt floor_of(const Rational& q);
BigInt ceil_of(const Rational& q);

/// Euclidean division: the unique q with a = b*q + r and 0 <= r < |b|.
BigInt euclid_div(const BigInt& a, const BigInt& b);
BigInt euclid_mod(const BigInt& a, const BigInt& b);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

/// A rational plus a multiple of a positive infinitesimal delta. Ordered
/// lexicographically, which models 0 < t as 0 <= t - delta.
struct DeltaRational {
  Rational real;
  Rational delta;

  DeltaRational() = default;
  DeltaRational(Rational r) : real(std::move(r)) {}
  DeltaRational(Rational r, Rational d) : real(std::move(r)), delta(std::move(d)) {}

  friend DeltaRational operator+(const DeltaRational& a, const DeltaRational& b) {
    return {a.real + b.real, a.delta + b.delta};
  }
  friend DeltaRational operator-(const DeltaRational& a, const DeltaRational& b) {
    return {a.real - b.real, a.delta - b.delta};
  }
  friend DeltaRational operator*(const Rational& c, const DeltaRational& a) {
    return {c * a.real, c * a.delta};
  }
  friend bool operator==(const DeltaRational& a, const DeltaRational& b) {
    return a.real == b.real && a.delta == b.delta;
  }
  friend std::strong_ordering operator<=>(const DeltaRational& a, const DeltaRational& b) {
    int c = cmp(a.real, b.real);
    if (c == 0) c = cmp(a.delta, b.delta);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Plain rational obtained by fixing delta to a concrete value.
  Rational at(const Rational& delta_value) const { return real + delta * delta_value; }
};

std::ostream& operator<<(std::ostream& os, const DeltaRational& v);

}  // namespace interpolmc
