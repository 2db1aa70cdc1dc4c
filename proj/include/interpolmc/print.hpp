// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "interpolmc/formula.hpp"

namespace interpolmc {

// Fully parenthesized SMT-LIB-style output in canonical symbol order.
// Negative numbers print as (- n), fractions as (/ p q).

std::string print_literal(const Rational& q);
std::string print_term(const ExtTerm& t);
std::string print_atom(const Atom& a);
std::string print_formula(const Formula& f);
std::string print_assignment(const Assignment& m);

}  // namespace interpolmc
