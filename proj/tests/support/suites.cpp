// SPDX-License-Identifier: Apache-2.0

#include "suites.hpp"

#include <algorithm>

#include "interpolmc/interp.hpp"
#include "interpolmc/lia.hpp"
#include "interpolmc/lra.hpp"
#include "interpolmc/print.hpp"
#include "interpolmc/rewrite.hpp"
#include "oracle.hpp"

namespace interpolmc::testing {

void SuiteResult::record(bool ok, const std::string& what) {
  ++total;
  if (ok) {
    ++passed;
  } else if (failures.size() < 5) {
    failures.push_back(what);
  }
}

namespace {

Atom leq(const LinTerm& t) { return Atom::leq0(ExtTerm(t)); }
Atom lt(const LinTerm& t) { return Atom::lt0(ExtTerm(t)); }

std::vector<Atom> concat(std::vector<Atom> a, const std::vector<Atom>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

SymbolSet symbols_of(const std::vector<Atom>& atoms) {
  SymbolSet out;
  for (const auto& a : atoms) a.term.collect_symbols(out);
  return out;
}

Formula conj_of(const std::vector<Atom>& atoms) {
  std::vector<Formula> fs;
  for (const auto& a : atoms) fs.push_back(Formula::atom(a));
  return Formula::conj(std::move(fs));
}

bool lra_unsat(const std::vector<Atom>& atoms) { return std::holds_alternative<LraUnsat>(lra_check(atoms)); }

struct Split {
  std::vector<Atom> a, b;
};

// A planted Farkas combination: some positive multiple sum of the atoms
// plus the closing atom is a negative constant.
Split random_unsat_split(Rng& rng) {
  std::vector<Symbol> vars;
  int nvars = rng.uniform(2, 6);
  for (int i = 0; i < nvars; ++i) vars.push_back(real_var("v" + std::to_string(i)));
  auto rational_term = [&] {
    LinTerm t = random_term(rng, vars, 4, 6);
    LinTerm out(t.constant() / rng.uniform(1, 3));
    for (const auto& [s, c] : t.coeffs()) out.add(s, c / Rational(rng.uniform(1, 3)));
    return out;
  };
  std::vector<Atom> atoms;
  int n = rng.uniform(2, 5);
  LinTerm sum;
  bool strict_used = false;
  for (int i = 0; i < n; ++i) {
    LinTerm t = rational_term();
    bool strict = rng.coin(0.25);
    atoms.push_back(strict ? lt(t) : leq(t));
    if (rng.coin(0.7)) {
      sum += Rational(rng.uniform(1, 3)) * t;
      strict_used = strict_used || strict;
    }
  }
  // 0 <= -sum - c with c >= 0 (c = 0 only with a strict participant)
  int c = strict_used ? rng.uniform(0, 2) : rng.uniform(1, 3);
  atoms.push_back(leq(-sum - LinTerm(Rational(c))));
  for (int i = 0; i < rng.uniform(0, 2); ++i) atoms.push_back(leq(rational_term()));
  std::shuffle(atoms.begin(), atoms.end(), rng.engine());
  Split s;
  for (auto& atom : atoms) (rng.coin() ? s.a : s.b).push_back(std::move(atom));
  return s;
}

// Random conjunction with every symbol boxed into [lo, hi] within [-7, 7].
std::vector<Atom> random_bounded(Rng& rng, const std::vector<Symbol>& vars) {
  std::vector<Atom> atoms;
  for (const auto& s : vars) {
    int lo = rng.uniform(-7, 3), hi = rng.uniform(lo, 7);
    atoms.push_back(leq(LinTerm::var(s) - LinTerm(Rational(lo))));
    atoms.push_back(leq(LinTerm(Rational(hi)) - LinTerm::var(s)));
  }
  int n = rng.uniform(1, 4);
  for (int i = 0; i < n; ++i) atoms.push_back(leq(random_term(rng, vars, 5, 12)));
  std::shuffle(atoms.begin(), atoms.end(), rng.engine());
  return atoms;
}

}  // namespace

SuiteResult lra_separator_suite(std::uint64_t seed, int count) {
  Rng rng(seed);
  SuiteResult res;
  for (int iter = 0; iter < count; ++iter) {
    Split s = random_unsat_split(rng);
    std::string tag = "instance " + std::to_string(iter);
    try {
      auto all = concat(s.a, s.b);
      auto verdict = lra_check(all);
      if (!std::holds_alternative<LraUnsat>(verdict)) {
        res.record(false, tag + ": planted contradiction reported sat");
        continue;
      }
      const auto& cert = std::get<LraUnsat>(verdict).certificate;
      validate_certificate(all, cert);
      Formula itp = lra_interpolate(s.a, s.b, cert);

      SymbolSet sa = symbols_of(s.a), sb = symbols_of(s.b);
      bool sig = std::ranges::all_of(itp.symbols(), [&](const Symbol& x) { return sa.contains(x) && sb.contains(x); });
      FreshSymbols fresh("t");
      auto neg = conjunction_atoms(rewrite_literals(negate(itp), Theory::LRA, fresh));
      bool a_entails = lra_unsat(concat(s.a, neg));
      bool b_refutes = lra_unsat(concat(conjunction_atoms(itp), s.b));
      AnnotatedIneq ann = replay_annotated(s.a, s.b, cert);
      SymbolSet rest;
      (ann.ineq.linear() - ann.annotation).collect_symbols(rest);
      bool split = std::ranges::all_of(rest, [&](const Symbol& x) { return sb.contains(x); });
      res.record(sig && a_entails && b_refutes && split, tag + ": " + print_formula(itp));
    } catch (const std::exception& e) {
      res.record(false, tag + ": " + e.what());
    }
  }
  return res;
}

SuiteResult lia_enumeration_suite(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Symbol> vars{int_var("x"), int_var("y"), int_var("z")};
  SuiteResult res;
  for (int iter = 0; iter < count; ++iter) {
    auto atoms = random_bounded(rng, vars);
    std::string tag = "instance " + std::to_string(iter);
    try {
      bool expected = exists_int_point(conj_of(atoms), vars, -7, 7);
      auto verdict = lia_check(atoms);
      if (auto* s = std::get_if<LiaSat>(&verdict)) {
        bool model_ok = std::ranges::all_of(atoms, [&](const Atom& a) { return a.evaluate(s->model); });
        res.record(expected && model_ok, tag + ": sat verdict");
      } else if (auto* u = std::get_if<LiaUnsat>(&verdict)) {
        validate_proof(atoms, *u->proof);
        res.record(!expected, tag + ": unsat verdict");
      } else {
        res.record(false, tag + ": resource out");
      }
    } catch (const std::exception& e) {
      res.record(false, tag + ": " + e.what());
    }
  }
  return res;
}

SuiteResult gcd_cut_suite(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<Symbol> all{int_var("x"), int_var("y"), int_var("z")};
  SuiteResult res;
  for (int iter = 0; iter < count; ++iter) {
    std::vector<Symbol> vars(all.begin(), all.begin() + rng.uniform(1, 3));
    // scale by a common factor so cuts are frequently nontrivial
    LinTerm t = random_term(rng, vars, 3, 0);
    int f = rng.uniform(1, 4);
    LinTerm scaled(Rational(rng.uniform(-12, 12)));
    for (const auto& [s, c] : t.coeffs()) scaled.add(s, c * f);
    Atom in = leq(scaled);
    bool ok = int_entails_on_box(Formula::atom(in), Formula::atom(gcd_cut(in)), vars, -10, 10);
    res.record(ok, print_atom(in));
  }
  return res;
}

SuiteResult sequence_suite(std::uint64_t seed, int count) {
  Rng rng(seed);
  SuiteResult res;
  for (int round = 0; round < count; ++round) {
    auto inst = random_unsat_chain(rng, 4);
    std::string tag = "chain " + std::to_string(round);
    try {
      std::vector<Partition> parts;
      for (std::size_t i = 0; i < inst.labels.size(); ++i) parts.push_back({"A" + std::to_string(i), inst.labels[i], {}});
      auto r = sequence_interpolant(parts, Theory::LIA);
      if (!std::holds_alternative<Separators>(r)) {
        res.record(false, tag + ": reported sat");
        continue;
      }
      const auto& seq = std::get<Separators>(r).formulas;
      bool ok = check_sequence(parts, seq, Theory::LIA).ok();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        ok = ok && int_entails_on_box(Formula::conj({seq[i], parts[i].formula}), seq[i + 1], inst.vars, -3, 3);
      }
      res.record(ok, tag);
    } catch (const std::exception& e) {
      res.record(false, tag + ": " + e.what());
    }
  }
  return res;
}

SuiteResult tree_suite(std::uint64_t seed, int count) {
  Rng rng(seed);
  SuiteResult res;
  for (int round = 0; round < count; ++round) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 5));
    std::vector<std::optional<std::size_t>> parents(n);
    for (std::size_t v = 0; v + 1 < n; ++v) {
      parents[v] = static_cast<std::size_t>(rng.uniform(static_cast<int>(v) + 1, static_cast<int>(n) - 1));
    }
    auto inst = random_unsat_tree(rng, parents);
    std::string tag = "tree " + std::to_string(round);
    try {
      TreeQuery q;
      for (std::size_t v = 0; v < n; ++v) q.nodes.push_back({{"N" + std::to_string(v), inst.labels[v], {}}, parents[v]});
      auto r = tree_interpolant(q, Theory::LIA);
      if (!std::holds_alternative<Separators>(r)) {
        res.record(false, tag + ": reported sat");
        continue;
      }
      const auto& itps = std::get<Separators>(r).formulas;
      bool ok = check_tree(q, itps, Theory::LIA).ok();
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<Formula> premise{inst.labels[v]};
        for (std::size_t c : q.children(v)) premise.push_back(itps[c]);
        ok = ok && int_entails_on_box(Formula::conj(premise), itps[v], inst.vars, -3, 3);
      }
      res.record(ok, tag);
    } catch (const std::exception& e) {
      res.record(false, tag + ": " + e.what());
    }
  }
  return res;
}

}  // namespace interpolmc::testing
