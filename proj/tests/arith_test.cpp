// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "interpolmc/errors.hpp"
#include "interpolmc/print.hpp"
#include "interpolmc/rewrite.hpp"
#include "oracle.hpp"

namespace interpolmc {
namespace {

using testing::int_var;
using testing::real_var;
using testing::Rng;

TEST(Rational, CanonicalForm) {
  Rational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_THROW(make_rational(1, 0), DivisionByZero);
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_of(make_rational(-7, 2)), -4);
  EXPECT_EQ(ceil_of(make_rational(-7, 2)), -3);
  EXPECT_EQ(floor_of(Rational(5)), 5);
}

TEST(DeltaRational, LexicographicOrder) {
  DeltaRational a(Rational(1), Rational(-5));
  DeltaRational b(Rational(1), Rational(0));
  DeltaRational c(Rational(2), Rational(-100));
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(DeltaRational(Rational(3)), DeltaRational(Rational(3), Rational(0)));
}

TEST(Symbol, CanonicalOrderIsSortNameIndex) {
  Symbol xi("x", Sort::Int);
  Symbol ai("a", Sort::Int, 3);
  Symbol ar("a", Sort::Real);
  EXPECT_LT(ai, xi);
  EXPECT_LT(xi, ar);
  EXPECT_LT(Symbol("a", Sort::Int, 1), Symbol("a", Sort::Int, 2));
}

TEST(Normalize, CombinesAndCancels) {
  Symbol x = real_var("x"), y = real_var("y"), z = real_var("z");
  LinTerm t = normalize({{z, 1}, {x, -1}, {y, -2}, {x, 1}}, -2);
  EXPECT_EQ(print_term(t), "(+ (* (- 2) y) z (- 2))");
  EXPECT_FALSE(t.coeffs().contains(x));

  EXPECT_EQ(normalize({{x, 0}}, 5), LinTerm(Rational(5)));

  LinTerm u = (LinTerm::var(x) + LinTerm::var(y)) + (LinTerm::var(y, -1) + LinTerm(Rational(1)));
  EXPECT_EQ(print_term(u), "(+ x 1)");
}

TEST(Normalize, IdempotentAndEvaluationPreserving) {
  Rng rng(testing::test_seed(11));
  std::vector<Symbol> vars{real_var("a"), real_var("b"), real_var("c"), real_var("d")};
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Monomial> summands;
    int n = rng.uniform(0, 8);
    for (int i = 0; i < n; ++i) {
      summands.emplace_back(vars[rng.uniform(0, 3)], make_rational(rng.uniform(-5, 5), rng.uniform(1, 4)));
    }
    Rational constant = make_rational(rng.uniform(-9, 9), rng.uniform(1, 3));
    LinTerm t = normalize(summands, constant);
    EXPECT_EQ(normalize(t), t);
    for (const auto& [s, c] : t.coeffs()) EXPECT_NE(c, 0);

    Assignment m;
    for (const auto& v : vars) m[v] = make_rational(rng.uniform(-20, 20), rng.uniform(1, 5));
    Rational direct = constant;
    for (const auto& [s, c] : summands) direct += c * m[s];
    EXPECT_EQ(direct, t.evaluate(m));
  }
}

TEST(ExtTerm, QuotientPullsOutDivisibleSummands) {
  Symbol x = int_var("x"), y = int_var("y");
  // (y + 4x + 1) ÷ 4 ~> x + (y + 1) ÷ 4
  LinTerm u = LinTerm::var(y) + LinTerm::var(x, 4) + LinTerm(Rational(1));
  ExtTerm q = ExtTerm::quotient(ExtTerm(u), 4);
  EXPECT_EQ(print_term(q), "(+ x (div (+ y 1) 4))");
  // fully divisible numerator leaves no quotient
  EXPECT_EQ(print_term(ExtTerm::quotient(ExtTerm(LinTerm::var(x, 6) + LinTerm(Rational(-4))), 2)),
            "(+ (* 3 x) (- 2))");
  // constant numerators fold
  EXPECT_EQ(print_term(ExtTerm::quotient(ExtTerm(Rational(-7)), 2)), "(- 4)");
}

TEST(ExtTerm, QuotientAgreesWithEuclideanDivision) {
  Rng rng(testing::test_seed(12));
  std::vector<Symbol> vars{int_var("x"), int_var("y")};
  for (int iter = 0; iter < 100; ++iter) {
    LinTerm u = testing::random_term(rng, vars, 6, 9);
    BigInt beta = rng.uniform(1, 5);
    ExtTerm q = ExtTerm::quotient(ExtTerm(u), beta);
    testing::for_each_point(vars, -4, 4, [&](const Assignment& m) {
      EXPECT_EQ(q.evaluate(m), Rational(euclid_div(u.evaluate(m).get_num(), beta)));
    });
  }
}

Formula rewrite(const Formula& f, Theory th) {
  FreshSymbols fresh("t");
  return rewrite_literals(f, th, fresh);
}

TEST(RewriteLiterals, IntegerDisequation) {
  Symbol x = int_var("x"), y = int_var("y");
  Formula f = negate(Formula::eq(ExtTerm(LinTerm::var(x)), ExtTerm(LinTerm::var(y))));
  EXPECT_EQ(print_formula(rewrite(f, Theory::LIA)),
            "(or (<= 0 (+ x (* (- 1) y) (- 1))) (<= 0 (+ (* (- 1) x) y (- 1))))");
}

TEST(RewriteLiterals, EquationBecomesTwoInequalities) {
  Symbol s = real_var("s"), t = real_var("t");
  Formula f = Formula::eq(ExtTerm(LinTerm::var(s)), ExtTerm(LinTerm::var(t)));
  EXPECT_EQ(print_formula(rewrite(f, Theory::LRA)),
            "(and (<= 0 (+ s (* (- 1) t))) (<= 0 (+ (* (- 1) s) t)))");
  // strict stays strict over the reals
  EXPECT_EQ(print_formula(rewrite(negate(f), Theory::LRA)),
            "(or (< 0 (+ s (* (- 1) t))) (< 0 (+ (* (- 1) s) t)))");
}

TEST(RewriteLiterals, DivisibilityIntroducesTaggedQuotient) {
  Symbol x = int_var("x");
  FreshSymbols fresh("A");
  Formula f = rewrite_literals(Formula::atom(Atom::divides(2, ExtTerm(LinTerm::var(x)))), Theory::LIA, fresh);
  SymbolSet syms = f.symbols();
  ASSERT_EQ(syms.size(), 2u);
  Symbol q = *std::find_if(syms.begin(), syms.end(), [](const Symbol& s) { return FreshSymbols::is_fresh(s); });
  EXPECT_NE(q.name.find("!A!"), std::string::npos);
  EXPECT_EQ(testing::conjunction_atoms(f).size(), 2u);
  // enumeration: x in [-6, 6] satisfies 2 | x iff some q in [-4, 4] works
  for (int xv = -6; xv <= 6; ++xv) {
    bool some = false;
    for (int qv = -4; qv <= 4; ++qv) some = some || f.evaluate({{x, xv}, {q, qv}});
    EXPECT_EQ(some, xv % 2 == 0) << xv;
  }
}

TEST(RewriteLiterals, IntegerStrictnessAndScaling) {
  Symbol x = int_var("x");
  // 0 < x/2 + 1/3  ~>  0 <= 3x + 2 - 1
  Formula f = Formula::atom(Atom::lt0(ExtTerm(LinTerm::var(x, make_rational(1, 2)) + LinTerm(make_rational(1, 3)))));
  EXPECT_EQ(print_formula(rewrite(f, Theory::LIA)), "(<= 0 (+ (* 3 x) 1))");
}

TEST(RewriteLiterals, Errors) {
  Symbol x = int_var("x");
  Symbol r = real_var("r");
  Formula mixed = Formula::leq(ExtTerm(LinTerm::var(x)), ExtTerm(LinTerm::var(r)));
  EXPECT_THROW(rewrite(mixed, Theory::LIA), InputError);
  EXPECT_THROW(rewrite(mixed, Theory::LRA), InputError);
  Formula div = Formula::atom(Atom::divides(3, ExtTerm(LinTerm::var(r))));
  EXPECT_THROW(rewrite(div, Theory::LRA), InputError);
}

Formula random_literal(Rng& rng, const std::vector<Symbol>& vars, bool& used_div) {
  LinTerm t = testing::random_term(rng, vars, 3, 5);
  int k = rng.uniform(0, used_div ? 3 : 5);
  Formula f;
  switch (k) {
    case 0: f = Formula::atom(Atom::leq0(ExtTerm(t))); break;
    case 1: f = Formula::atom(Atom::lt0(ExtTerm(t))); break;
    case 2: f = Formula::atom(Atom::eq0(ExtTerm(t))); break;
    case 3: f = Formula::atom(Atom::neq0(ExtTerm(t))); break;
    default:
      used_div = true;
      f = Formula::atom(Atom::divides(rng.uniform(2, 3), ExtTerm(t)));
      if (k == 5) f = negate(f);
  }
  return f;
}

TEST(RewriteLiterals, PreservesSatisfiabilityOnBoundedBoxes) {
  Rng rng(testing::test_seed(13));
  std::vector<Symbol> vars{int_var("x"), int_var("y"), int_var("z")};
  for (int iter = 0; iter < 40; ++iter) {
    bool used_div = false;
    std::vector<Formula> lits;
    int n = rng.uniform(1, 3);
    for (int i = 0; i < n; ++i) lits.push_back(random_literal(rng, vars, used_div));
    Formula f = rng.coin() ? Formula::conj(lits) : Formula::disj(lits);
    Formula g = rewrite(f, Theory::LIA);

    std::vector<Symbol> fresh;
    for (const auto& s : g.symbols()) {
      if (FreshSymbols::is_fresh(s)) fresh.push_back(s);
    }
    bool before = testing::exists_int_point(f, vars, -5, 5);
    bool after = false;
    // |t| <= 3*5*3 + 5 = 50 on the box, so quotients and remainders of
    // moduli <= 3 stay within [-50, 50].
    testing::for_each_point(vars, -5, 5, [&](const Assignment& m) {
      if (after) return;
      if (fresh.empty()) {
        after = g.evaluate(m);
        return;
      }
      testing::for_each_point(fresh, -50, 50, [&](const Assignment& e) {
        if (after) return;
        Assignment full = m;
        full.insert(e.begin(), e.end());
        after = g.evaluate(full);
      });
    });
    EXPECT_EQ(before, after) << print_formula(f) << " vs " << print_formula(g);
  }
}

TEST(EliminateDiv, DirectExpansion) {
  Symbol x = int_var("x");
  FreshSymbols fresh("I");
  ExtTerm q = ExtTerm::quotient(ExtTerm(LinTerm::var(x)), 2);
  Formula f = eliminate_div(Formula::atom(Atom::leq0(q)), fresh);
  EXPECT_EQ(print_formula(f),
            "(and (<= 0 q!I!0) (= (+ (* (- 2) q!I!0) (* (- 1) r!I!1) x) 0) (<= 0 r!I!1) (<= 0 (+ (* (- 1) r!I!1) 1)))");
  Formula plain = Formula::atom(Atom::leq0(ExtTerm(LinTerm::var(x))));
  EXPECT_EQ(eliminate_div(plain, fresh), plain);
}

TEST(EliminateDiv, SeparatorOfFamilyIsEquisatisfiable) {
  Symbol y = int_var("y");
  // 0 <= (y + 1) ÷ 4 + (-y) ÷ 4
  ExtTerm t = ExtTerm::quotient(ExtTerm(LinTerm::var(y) + LinTerm(Rational(1))), 4) +
              ExtTerm::quotient(ExtTerm(LinTerm::var(y, -1)), 4);
  Formula sep = Formula::atom(Atom::leq0(t));
  FreshSymbols fresh("I");
  Formula flat = eliminate_div(sep, fresh);
  std::vector<Symbol> fresh_syms;
  for (const auto& s : flat.symbols()) {
    if (s != y) fresh_syms.push_back(s);
  }
  ASSERT_EQ(fresh_syms.size(), 4u);  // two quotients, two remainders
  for (int yv = -10; yv <= 10; ++yv) {
    bool direct = sep.evaluate({{y, yv}});
    bool some = false;
    testing::for_each_point(fresh_syms, -4, 4, [&](const Assignment& e) {
      Assignment m = e;
      m[y] = yv;
      some = some || flat.evaluate(m);
    });
    EXPECT_EQ(direct, some) << yv;
  }
}

}  // namespace
}  // namespace interpolmc
