// SPDX-License-Identifier: Apache-2.0

#include "simplex.hpp"

#include "interpolmc/errors.hpp"

namespace interpolmc::detail {

Simplex::Simplex(std::span<const Atom> atoms) {
  SymbolSet syms;
  for (const auto& a : atoms) {
    if (!a.is_inequality() || !a.term.is_linear()) {
      throw InputError("lra_check expects linear 0 <= t / 0 < t atoms");
    }
    a.linear().collect_symbols(syms);
  }
  symbols_.assign(syms.begin(), syms.end());
  std::map<Symbol, int> index;
  for (int i = 0; i < static_cast<int>(symbols_.size()); ++i) index.emplace(symbols_[i], i);

  int n = static_cast<int>(symbols_.size());
  lower_.assign(n, std::nullopt);
  value_.assign(n, DeltaRational());
  row_of_.assign(n, -1);
  atom_of_.assign(n, 0);

  for (std::size_t id = 0; id < atoms.size(); ++id) {
    const Atom& a = atoms[id];
    const LinTerm& t = a.linear();
    bool strict = a.kind == AtomKind::Lt0;
    if (t.is_constant()) {
      bool ok = strict ? t.constant() > 0 : t.constant() >= 0;
      if (!ok && !trivial_conflict_) trivial_conflict_ = id;
      continue;
    }
    int v = static_cast<int>(lower_.size());
    // slack = sum of coefficients; atom holds iff slack >= -constant (+ delta)
    lower_.emplace_back(DeltaRational(-t.constant(), strict ? Rational(1) : Rational(0)));
    value_.emplace_back();
    row_of_.push_back(static_cast<int>(rows_.size()));
    atom_of_.push_back(id);
    Row row;
    for (const auto& [s, c] : t.coeffs()) row.emplace(index.at(s), c);
    rows_.push_back(std::move(row));
    basic_.push_back(v);
  }
}

void Simplex::update(int nonbasic, const DeltaRational& new_value) {
  DeltaRational diff = new_value - value_[nonbasic];
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    auto it = rows_[r].find(nonbasic);
    if (it != rows_[r].end()) value_[basic_[r]] = value_[basic_[r]] + it->second * diff;
  }
  value_[nonbasic] = new_value;
}

void Simplex::pivot(int row, int entering) {
  int leaving = basic_[row];
  Row old = std::move(rows_[row]);
  Rational a = old.at(entering);
  old.erase(entering);
  Row fresh;
  Rational inv = 1 / a;
  fresh.emplace(leaving, inv);
  for (const auto& [v, c] : old) fresh.emplace(v, -c * inv);

  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (static_cast<int>(r) == row) continue;
    auto it = rows_[r].find(entering);
    if (it == rows_[r].end()) continue;
    Rational c = it->second;
    rows_[r].erase(it);
    for (const auto& [v, d] : fresh) {
      auto [jt, inserted] = rows_[r].try_emplace(v, c * d);
      if (!inserted) {
        jt->second += c * d;
        if (jt->second == 0) rows_[r].erase(jt);
      }
    }
  }
  rows_[row] = std::move(fresh);
  basic_[row] = entering;
  row_of_[entering] = row;
  row_of_[leaving] = -1;
}

FarkasCertificate Simplex::explain(int row) const {
  FarkasCertificate cert;
  cert.coefficients[atom_of_[basic_[row]]] += 1;
  for (const auto& [v, c] : rows_[row]) cert.coefficients[atom_of_[v]] += -c;
  for (auto it = cert.coefficients.begin(); it != cert.coefficients.end();) {
    it = it->second == 0 ? cert.coefficients.erase(it) : std::next(it);
  }
  return cert;
}

LraVerdict Simplex::check() {
  if (trivial_conflict_) {
    FarkasCertificate cert;
    cert.coefficients.emplace(*trivial_conflict_, 1);
    return LraUnsat{cert};
  }
  for (;;) {
    int row = -1;
    int best = -1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      int v = basic_[r];
      if (lower_[v] && value_[v] < *lower_[v] && (best < 0 || v < best)) {
        best = v;
        row = static_cast<int>(r);
      }
    }
    if (row < 0) break;

    int entering = -1;
    for (const auto& [v, c] : rows_[row]) {
      if (c > 0 || can_decrease(v)) {
        entering = v;
        break;
      }
    }
    if (entering < 0) return LraUnsat{explain(row)};

    Rational a = rows_[row].at(entering);
    DeltaRational theta = (1 / a) * (*lower_[best] - value_[best]);
    update(entering, value_[entering] + theta);
    pivot(row, entering);
  }
  LraSat sat;
  for (std::size_t i = 0; i < symbols_.size(); ++i) sat.model.emplace(symbols_[i], value_[i]);
  return sat;
}

}  // namespace interpolmc::detail
