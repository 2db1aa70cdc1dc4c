// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "interpolmc/errors.hpp"
#include "interpolmc/lia.hpp"
#include "interpolmc/print.hpp"
#include "interpolmc/rewrite.hpp"
#include "oracle.hpp"
#include "suites.hpp"

namespace interpolmc {
namespace {

using testing::int_var;
using testing::Rng;

const Symbol x = int_var("x");
const Symbol y = int_var("y");
const Symbol z = int_var("z");

LinTerm v(const Symbol& s, int c = 1) { return LinTerm::var(s, c); }
LinTerm k(int c) { return LinTerm(Rational(c)); }
Atom leq(const LinTerm& t) { return Atom::leq0(ExtTerm(t)); }

std::vector<Atom> concat(std::vector<Atom> a, const std::vector<Atom>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Formula conj_of(const std::vector<Atom>& atoms) {
  std::vector<Formula> fs;
  for (const auto& a : atoms) fs.push_back(Formula::atom(a));
  return Formula::conj(std::move(fs));
}

// The exponential-separator family: A_n forces y into [-2n*x - n + 1, -2n*x],
// B_n into [-2n*z + 1, -2n*z + n].
std::vector<Atom> family_a(int n) { return {leq(v(y) + v(x, 2 * n) + k(n - 1)), leq(v(y, -1) - v(x, 2 * n))}; }
std::vector<Atom> family_b(int n) { return {leq(v(y) + v(z, 2 * n) + k(-1)), leq(v(y, -1) - v(z, 2 * n) + k(n))}; }

TEST(EuclidDiv, Examples) {
  EXPECT_EQ(euclid_div(7, 2), 3);
  EXPECT_EQ(euclid_div(-7, 2), -4);
  EXPECT_EQ(euclid_div(7, -2), -3);
  EXPECT_EQ(euclid_mod(-7, 2), 1);
  EXPECT_EQ(euclid_mod(7, -2), 1);
}

TEST(GcdCut, Examples) {
  EXPECT_EQ(gcd_cut(leq(v(x, 4) - v(z, 4) + k(3))), leq(v(x) - v(z)));
  EXPECT_EQ(gcd_cut(leq(v(x) + k(1))), leq(v(x) + k(1)));
  EXPECT_EQ(gcd_cut(leq(v(x, 6) - v(y, 9) + k(5))), leq(v(x, 2) - v(y, 3) + k(1)));
  EXPECT_EQ(gcd_cut(leq(k(-3))), leq(k(-3)));
}

TEST(GcdCut, SoundOnIntegerPoints) {
  auto r = testing::gcd_cut_suite(testing::test_seed(31), 1000);
  EXPECT_TRUE(r.ok()) << r.passed << "/" << r.total << " " << (r.failures.empty() ? "" : r.failures[0]);
}

TEST(LiaCheck, FamilyTwoIsCutOnly) {
  auto atoms = concat(family_a(2), family_b(2));
  auto verdict = lia_check(atoms);
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  const auto& proof = *std::get<LiaUnsat>(verdict).proof;
  validate_proof(atoms, proof);
  ProofStats st = proof_stats(proof);
  EXPECT_EQ(st.branches, 0u);
  EXPECT_EQ(st.leaves, 1u);
}

TEST(LiaCheck, HalfIntegerIsUnsat) {
  std::vector<Atom> atoms{leq(v(x, 2) + k(-1)), leq(k(1) - v(x, 2))};
  auto verdict = lia_check(atoms);
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  validate_proof(atoms, *std::get<LiaUnsat>(verdict).proof);
  EXPECT_FALSE(testing::exists_int_point(conj_of(atoms), {x}, -3, 3));
}

TEST(LiaCheck, TrivialSat) {
  std::vector<Atom> atoms{leq(v(x))};
  auto verdict = lia_check(atoms);
  ASSERT_TRUE(std::holds_alternative<LiaSat>(verdict));
  EXPECT_EQ(std::get<LiaSat>(verdict).model.at(x), 0);
}

TEST(LiaCheck, BranchingNeeded) {
  // 1 <= 3x + 2y <= 2 inside a box; the relaxation optimum is fractional.
  std::vector<Atom> atoms{leq(v(x, 3) + v(y, 2) + k(-1)), leq(k(2) - v(x, 3) - v(y, 2)), leq(v(x) + k(5)),
                          leq(k(5) - v(x)), leq(v(y) + k(5)), leq(k(5) - v(y))};
  auto verdict = lia_check(atoms);
  ASSERT_TRUE(std::holds_alternative<LiaSat>(verdict));
  for (const auto& a : atoms) EXPECT_TRUE(a.evaluate(std::get<LiaSat>(verdict).model));
}

TEST(LiaCheck, BudgetExhaustionIsResourceOut) {
  // Thin unbounded strips; with no branches and no cuts nothing can refute.
  std::vector<Atom> atoms{leq(v(x, 3) - v(y, 5) + k(-1)), leq(k(1) - v(x, 3) + v(y, 5)),
                          leq(v(x, 5) - v(z, 7) + k(-2)), leq(k(2) - v(x, 5) + v(z, 7))};
  LiaOptions opts;
  opts.branch_budget = 0;
  opts.cut_rounds = 0;
  auto verdict = lia_check(atoms, opts);
  EXPECT_FALSE(std::holds_alternative<LiaUnsat>(verdict));
}

TEST(ValidateProof, RejectsTamperedLeaf) {
  auto atoms = concat(family_a(2), family_b(2));
  auto verdict = lia_check(atoms);
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  auto bad = std::make_shared<ProofNode>(*std::get<LiaUnsat>(verdict).proof);
  for (auto& [id, c] : bad->certificate->coefficients) c = 0;
  bad->certificate->coefficients.begin()->second = 1;
  EXPECT_THROW(validate_proof(atoms, *bad), CertificateInvalid);
}

TEST(LiaInterpolate, FamilyTwoSeparator) {
  auto a = family_a(2), b = family_b(2);
  auto verdict = lia_check(concat(a, b));
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  Formula itp = lia_interpolate(a, b, *std::get<LiaUnsat>(verdict).proof);
  EXPECT_EQ(print_formula(itp), "(<= 0 (+ (div (* (- 1) y) 4) (div (+ y 1) 4)))");
}

TEST(LiaInterpolate, ContradictionInA) {
  std::vector<Atom> a{leq(v(x)), leq(v(x, -1) + k(-1))};
  auto verdict = lia_check(a);
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  Formula itp = lia_interpolate(a, {}, *std::get<LiaUnsat>(verdict).proof);
  EXPECT_TRUE(itp.symbols().empty());
  EXPECT_FALSE(itp.evaluate({}));
}

// Full separator check: A |= I and I & B unsat, both via lia_check after
// ÷-elimination, plus the shared-signature condition.
void expect_separator(const std::vector<Atom>& a, const std::vector<Atom>& b, const Formula& itp) {
  SymbolSet sa, sb;
  for (const auto& at : a) at.term.collect_symbols(sa);
  for (const auto& at : b) at.term.collect_symbols(sb);
  for (const auto& s : itp.symbols()) EXPECT_TRUE(sa.contains(s) && sb.contains(s)) << to_string(s);

  // ÷-scope hygiene
  std::function<void(const Formula&)> hygiene = [&](const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) {
      SymbolSet inside;
      f.atom().term.collect_div_symbols(inside);
      for (const auto& s : inside) EXPECT_TRUE(sb.contains(s)) << to_string(s);
    }
    for (const auto& c : f.children()) hygiene(c);
  };
  hygiene(itp);

  // Both checks may need case splits over the Boolean structure of I.
  std::function<bool(const Formula&, std::vector<Atom>)> unsat = [&](const Formula& f, std::vector<Atom> acc) {
    switch (f.kind()) {
      case Formula::Kind::True: return std::holds_alternative<LiaUnsat>(lia_check(acc));
      case Formula::Kind::False: return true;
      case Formula::Kind::Atom: acc.push_back(f.atom()); return std::holds_alternative<LiaUnsat>(lia_check(acc));
      case Formula::Kind::Or:
        return std::all_of(f.children().begin(), f.children().end(),
                           [&](const Formula& c) { return unsat(c, acc); });
      case Formula::Kind::And: {
        // push unit atoms, split on the first disjunction
        std::vector<Formula> rest;
        for (const auto& c : f.children()) {
          if (c.kind() == Formula::Kind::Atom) acc.push_back(c.atom());
          else rest.push_back(c);
        }
        if (rest.empty()) return std::holds_alternative<LiaUnsat>(lia_check(acc));
        Formula first = rest.front();
        rest.erase(rest.begin());
        return std::all_of(first.children().begin(), first.children().end(), [&](const Formula& c) {
          std::vector<Formula> parts = rest;
          parts.push_back(c);
          return unsat(Formula::conj(parts), acc);
        });
      }
    }
    return false;
  };
  FreshSymbols f1("I"), f2("N");
  EXPECT_TRUE(unsat(prepare(itp, Theory::LIA, f1), b)) << print_formula(itp);
  EXPECT_TRUE(unsat(prepare(negate(itp), Theory::LIA, f2), a)) << print_formula(itp);
}

TEST(LiaInterpolate, FamilyScaling) {
  for (int n = 2; n <= 5; ++n) {
    auto a = family_a(n), b = family_b(n);
    auto verdict = lia_check(concat(a, b));
    ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict)) << n;
    const auto& proof = *std::get<LiaUnsat>(verdict).proof;
    ProofStats st = proof_stats(proof);
    EXPECT_EQ(st.branches, 0u) << n;
    EXPECT_EQ(st.cuts_used, 2u) << n;
    Formula itp = lia_interpolate(a, b, proof);
    expect_separator(a, b, itp);
    std::vector<Symbol> vars{x, y, z};
    EXPECT_TRUE(testing::int_entails_on_box(conj_of(a), itp, vars, -3 * n, 3 * n)) << n;
    EXPECT_FALSE(testing::exists_int_point(Formula::conj({itp, conj_of(b)}), vars, -3 * n, 3 * n)) << n;
  }
}

TEST(LiaInterpolate, ParityOfSharedSymbol) {
  // x = 2y versus x = 2z + 1
  FreshSymbols fa("A"), fb("B");
  auto a = testing::conjunction_atoms(prepare(Formula::eq(ExtTerm(v(x)), ExtTerm(v(y, 2))), Theory::LIA, fa));
  auto b = testing::conjunction_atoms(prepare(Formula::eq(ExtTerm(v(x)), ExtTerm(v(z, 2) + k(1))), Theory::LIA, fb));
  auto verdict = lia_check(concat(a, b));
  ASSERT_TRUE(std::holds_alternative<LiaUnsat>(verdict));
  Formula itp = lia_interpolate(a, b, *std::get<LiaUnsat>(verdict).proof);
  for (const auto& s : itp.symbols()) EXPECT_EQ(s, x);
  expect_separator(a, b, itp);
  std::vector<Symbol> vars{x, y, z};
  EXPECT_TRUE(testing::int_entails_on_box(conj_of(a), itp, vars, -8, 8));
  EXPECT_FALSE(testing::exists_int_point(Formula::conj({itp, conj_of(b)}), vars, -8, 8));
}

// Random conjunction with every symbol boxed into [lo, hi] subsets of [-7, 7].
std::vector<Atom> random_bounded(Rng& rng, const std::vector<Symbol>& vars) {
  std::vector<Atom> atoms;
  for (const auto& s : vars) {
    int lo = rng.uniform(-7, 3), hi = rng.uniform(lo, 7);
    atoms.push_back(leq(v(s) - k(lo)));
    atoms.push_back(leq(k(hi) - v(s)));
  }
  int n = rng.uniform(1, 4);
  for (int i = 0; i < n; ++i) atoms.push_back(leq(testing::random_term(rng, vars, 5, 12)));
  std::shuffle(atoms.begin(), atoms.end(), rng.engine());
  return atoms;
}

TEST(LiaProperties, AgreesWithEnumeration) {
  auto r = testing::lia_enumeration_suite(testing::test_seed(32), 500);
  EXPECT_TRUE(r.ok()) << r.passed << "/" << r.total << " " << (r.failures.empty() ? "" : r.failures[0]);
}

TEST(LiaProperties, SeparatorContract) {
  Rng rng(testing::test_seed(33));
  std::vector<Symbol> vars{x, y, z};
  int checked = 0;
  for (int iter = 0; iter < 400 && checked < 100; ++iter) {
    auto atoms = random_bounded(rng, vars);
    std::vector<Atom> a, b;
    for (auto& at : atoms) (rng.coin() ? a : b).push_back(at);
    auto verdict = lia_check(concat(a, b));
    auto* u = std::get_if<LiaUnsat>(&verdict);
    if (!u) continue;
    ++checked;
    Formula itp = lia_interpolate(a, b, *u->proof);
    expect_separator(a, b, itp);
    EXPECT_TRUE(testing::int_entails_on_box(conj_of(a), itp, vars, -7, 7)) << print_formula(itp);
    EXPECT_FALSE(testing::exists_int_point(Formula::conj({itp, conj_of(b)}), vars, -7, 7)) << print_formula(itp);
  }
  EXPECT_GE(checked, 50);
}

}  // namespace
}  // namespace interpolmc
