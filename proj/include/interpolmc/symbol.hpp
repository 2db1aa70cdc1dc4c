// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>

#include "interpolmc/arith.hpp"

namespace interpolmc {

enum class Sort { Int, Real };

std::string_view sort_name(Sort s);

/// A constant symbol. `index` distinguishes the primed copy (1) and the
/// unrolled copies x_0..x_k of a state variable; plain symbols use 0.
/// The default ordering (sort, name, index) is the canonical symbol order.
struct Symbol {
  Sort sort = Sort::Int;
  std::string name;
  unsigned index = 0;

  Symbol() = default;
  Symbol(std::string n, Sort s, unsigned i = 0) : sort(s), name(std::move(n)), index(i) {}

  Symbol with_index(unsigned i) const { return Symbol(name, sort, i); }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol&, const Symbol&) = default;
};

using SymbolSet = std::set<Symbol>;
using Assignment = std::map<Symbol, Rational>;

/// Display form: the name, with `@i` appended for nonzero indices.
std::string to_string(const Symbol& s);

}  // namespace interpolmc
