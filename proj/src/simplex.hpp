// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "interpolmc/lra.hpp"

namespace interpolmc::detail {

/// General simplex over lower-bounded slack rows, one slack per
/// non-constant atom. Pivoting uses Bland's rule on the variable order
/// (symbols in canonical order, then slacks in atom order).
class Simplex {
 public:
  explicit Simplex(std::span<const Atom> atoms);

  LraVerdict check();

 private:
  using Row = std::map<int, Rational>;

  bool is_symbol(int v) const { return v < static_cast<int>(symbols_.size()); }
  bool can_decrease(int v) const { return !lower_[v] || value_[v] > *lower_[v]; }
  void update(int nonbasic, const DeltaRational& new_value);
  void pivot(int row, int entering);
  FarkasCertificate explain(int row) const;

  std::vector<Symbol> symbols_;
  std::vector<std::size_t> atom_of_;  // slack var -> atom position
  std::vector<std::optional<DeltaRational>> lower_;
  std::vector<DeltaRational> value_;
  std::vector<int> row_of_;  // -1 when nonbasic
  std::vector<int> basic_;
  std::vector<Row> rows_;
  std::optional<std::size_t> trivial_conflict_;
};

}  // namespace interpolmc::detail
