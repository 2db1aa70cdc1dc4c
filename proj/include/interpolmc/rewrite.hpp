// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "interpolmc/formula.hpp"

namespace interpolmc {

enum class Theory { LRA, LIA };

inline Sort theory_sort(Theory t) { return t == Theory::LIA ? Sort::Int : Sort::Real; }
std::string_view theory_name(Theory t);

/// Source of fresh symbols. The tag names the partition the symbols belong
/// to, so symbols minted for different partitions never collide.
class FreshSymbols {
 public:
  explicit FreshSymbols(std::string tag) : tag_(std::move(tag)) {}

  Symbol make(Sort sort, std::string_view stem);
  const std::string& tag() const { return tag_; }

  static bool is_fresh(const Symbol& s);

 private:
  std::string tag_;
  unsigned next_ = 0;
};

/// Rewrites every literal into inequalities 0 <= t (and 0 < t over the reals):
/// equations split into two inequalities, disequations into a disjunction of
/// strict inequalities, integer strictness into 0 <= t - 1, and divisibility
/// into equations over fresh quotient/remainder symbols. Integer atoms are
/// scaled to integer coefficients. Throws InputError on ÷ subterms, on
/// symbols of the wrong sort and on divisibility over the reals.
Formula rewrite_literals(const Formula& f, Theory theory, FreshSymbols& fresh);

/// Replaces each maximal u ÷ b by a fresh q, conjoining u = b*q + r,
/// 0 <= r and 0 <= b - 1 - r. The definitions are functional, so the result
/// is equisatisfiable with f jointly with any other constraints.
Formula eliminate_div(const Formula& f, FreshSymbols& fresh);

/// eliminate_div followed by rewrite_literals.
Formula prepare(const Formula& f, Theory theory, FreshSymbols& fresh);

}  // namespace interpolmc
