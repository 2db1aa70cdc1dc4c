// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/arith.hpp"

#include "interpolmc/errors.hpp"

namespace interpolmc {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DivisionByZero();
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil_of(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt euclid_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw DivisionByZero();
  BigInt q;
  if (b > 0) {
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  } else {
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  return q;
}

BigInt euclid_mod(const BigInt& a, const BigInt& b) {
  BigInt r = a - b * euclid_div(a, b);
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

std::ostream& operator<<(std::ostream& os, const DeltaRational& v) {
  os << v.real.get_str();
  if (v.delta != 0) os << (v.delta > 0 ? "+" : "") << v.delta.get_str() << "d";
  return os;
}

}  // namespace interpolmc
