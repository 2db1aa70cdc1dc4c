// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/lia.hpp"

#include <functional>
#include <optional>
#include <set>

#include "interpolmc/errors.hpp"

namespace interpolmc {

namespace {

BigInt coefficient_gcd(const LinTerm& t) {
  BigInt g = 0;
  for (const auto& [s, c] : t.coeffs()) g = gcd(g, c.get_num());
  return g;
}

/// (weighted sum) / beta with floored constant; beta must divide every
/// coefficient.
LinTerm divide_floor(const LinTerm& t, const BigInt& beta) {
  Rational b(beta);
  LinTerm out(Rational(floor_of(t.constant() / b)));
  for (const auto& [s, c] : t.coeffs()) out.add(s, c / b);
  return out;
}

std::vector<Atom> as_atoms(const std::vector<LinTerm>& terms) {
  std::vector<Atom> atoms;
  atoms.reserve(terms.size());
  for (const auto& t : terms) atoms.push_back(Atom::leq0(ExtTerm(t)));
  return atoms;
}

struct TermLess {
  bool operator()(const LinTerm& a, const LinTerm& b) const { return compare(a, b) < 0; }
};

class Search {
 public:
  Search(std::span<const Atom> atoms, const LiaOptions& options) : atoms_(atoms), options_(options) {}

  LiaVerdict run() {
    auto root = std::make_shared<ProofNode>();
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& a = atoms_[i];
      if (a.kind != AtomKind::Leq0 || !a.term.is_linear() || !a.linear().is_integral()) {
        throw InputError("lia_check expects rewritten integer atoms 0 <= t with integral coefficients");
      }
      SymbolSet syms;
      a.linear().collect_symbols(syms);
      for (const auto& s : syms) {
        if (s.sort != Sort::Int) throw InputError("lia_check: symbol " + to_string(s) + " is not integer-sorted");
      }
      ProofConstraint c;
      c.origin = ProofConstraint::Origin::Input;
      c.term = a.linear();
      c.input = i;
      add(*root, std::move(c));
    }
    Outcome out = solve(*root);
    if (out == Outcome::Sat) return LiaSat{model_};
    if (out == Outcome::ResourceOut) return LiaResourceOut{};
    return LiaUnsat{root};
  }

 private:
  enum class Outcome { Sat, Unsat, ResourceOut };

  /// Appends c (and its gcd cut, when that differs) to the node and path.
  void add(ProofNode& node, ProofConstraint c) {
    LinTerm term = c.term;
    push(node, std::move(c));
    std::size_t id = terms_.size() - 1;
    BigInt g = coefficient_gcd(term);
    if (g > 1) {
      ProofConstraint cut;
      cut.origin = ProofConstraint::Origin::Cut;
      cut.term = divide_floor(term, g);
      cut.parents = {{id, BigInt(1)}};
      cut.divisor = g;
      if (!known_.contains(cut.term)) push(node, std::move(cut));
    }
  }

  void push(ProofNode& node, ProofConstraint c) {
    terms_.push_back(c.term);
    known_.insert(c.term);
    node.added.push_back(std::move(c));
  }

  void truncate(std::size_t size) {
    while (terms_.size() > size) {
      known_.erase(known_.find(terms_.back()));
      terms_.pop_back();
    }
  }

  /// Id of a constraint on the path with this term, pushing it as a cut
  /// of the given parents when it is new.
  std::size_t intern_cut(ProofNode& node, LinTerm term, std::vector<std::pair<std::size_t, BigInt>> parents,
                         BigInt divisor, std::size_t& added) {
    if (known_.contains(term)) {
      for (std::size_t id = terms_.size(); id-- > 0;) {
        if (terms_[id] == term) return id;
      }
    }
    ProofConstraint cut;
    cut.origin = ProofConstraint::Origin::Cut;
    cut.term = std::move(term);
    cut.parents = std::move(parents);
    cut.divisor = std::move(divisor);
    push(node, std::move(cut));
    ++added;
    return terms_.size() - 1;
  }

  /// Gaussian elimination over syntactic equalities (t and -t both on the
  /// path): the pivot symbol is combined out of every other live
  /// constraint and each result is gcd-cut. This recovers parity facts
  /// such as 2q - 2z - 1 = 0 that pairwise cuts and branching on unbounded
  /// symbols cannot.
  std::size_t eliminate_equalities(ProofNode& node) {
    std::size_t added = 0;
    std::vector<std::size_t> live(terms_.size());
    for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> eq;
      for (std::size_t a = 0; a < live.size() && !eq; ++a) {
        if (terms_[live[a]].is_constant()) continue;
        LinTerm neg = -terms_[live[a]];
        for (std::size_t b = a + 1; b < live.size(); ++b) {
          if (terms_[live[b]] == neg) {
            eq.emplace(live[a], live[b]);
            break;
          }
        }
      }
      if (!eq) return added;

      // pivot: smallest absolute coefficient, then canonical order
      const LinTerm e = terms_[eq->first];
      const Symbol* pivot = nullptr;
      for (const auto& [sym, c] : e.coeffs()) {
        if (pivot == nullptr || abs(c) < abs(e.coeff(*pivot))) pivot = &sym;
      }
      Symbol v = *pivot;
      BigInt ce = abs(e.coeff(v).get_num());
      // half with positive / negative pivot coefficient
      std::size_t pos = e.coeff(v) > 0 ? eq->first : eq->second;
      std::size_t neg = pos == eq->first ? eq->second : eq->first;

      std::vector<std::size_t> next;
      for (std::size_t k : live) {
        if (k == eq->first || k == eq->second) continue;
        Rational ck = terms_[k].coeff(v);
        if (ck == 0) {
          next.push_back(k);
          continue;
        }
        if (added >= options_.max_cuts_per_round * 4) return added;
        std::size_t half = ck > 0 ? neg : pos;
        BigInt a = abs(ck.get_num());
        BigInt g = gcd(a, ce);
        BigInt wk = ce / g;
        BigInt wh = a / g;
        LinTerm sum = Rational(wk) * terms_[k] + Rational(wh) * terms_[half];
        BigInt beta = sum.is_constant() ? BigInt(1) : coefficient_gcd(sum);
        LinTerm term = divide_floor(sum, beta);
        next.push_back(intern_cut(node, std::move(term), {{k, wk}, {half, wh}}, beta, added));
      }
      live = std::move(next);
    }
  }

  /// Pairwise combinations that eliminate one symbol and tighten under
  /// gcd_cut. Returns the number of cuts added.
  std::size_t derive_cuts(ProofNode& node) {
    std::size_t added = eliminate_equalities(node);
    std::size_t n = terms_.size();
    for (std::size_t i = 0; i < n && added < options_.max_cuts_per_round; ++i) {
      for (std::size_t j = i + 1; j < n && added < options_.max_cuts_per_round; ++j) {
        // copies: push() below may reallocate terms_
        const LinTerm ti = terms_[i];
        const LinTerm tj = terms_[j];
        for (const auto& [s, ci] : ti.coeffs()) {
          Rational cj = tj.coeff(s);
          if (cj == 0 || (ci > 0) == (cj > 0)) continue;
          BigInt a = abs(ci.get_num());
          BigInt b = abs(cj.get_num());
          BigInt g = gcd(a, b);
          BigInt wi = b / g;
          BigInt wj = a / g;
          LinTerm sum = Rational(wi) * ti + Rational(wj) * tj;
          if (sum.is_constant()) continue;
          BigInt beta = coefficient_gcd(sum);
          if (beta <= 1) continue;
          if (mpz_divisible_p(sum.constant().get_num_mpz_t(), beta.get_mpz_t())) continue;
          LinTerm cut_term = divide_floor(sum, beta);
          if (known_.contains(cut_term)) continue;
          ProofConstraint cut;
          cut.origin = ProofConstraint::Origin::Cut;
          cut.term = std::move(cut_term);
          cut.parents = {{i, wi}, {j, wj}};
          cut.divisor = beta;
          push(node, std::move(cut));
          ++added;
          if (added >= options_.max_cuts_per_round) break;
        }
      }
    }
    return added;
  }

  Outcome solve(ProofNode& node) {
    Assignment relaxed;
    std::size_t fresh_from = terms_.size();
    for (unsigned round = 0;; ++round) {
      // A refutation by the newest cuts alone keeps proofs in the
      // cuts-then-combine shape instead of mixing cuts with their parents.
      if (round > 0 && terms_.size() - fresh_from > 1) {
        std::vector<LinTerm> recent(terms_.begin() + static_cast<std::ptrdiff_t>(fresh_from), terms_.end());
        LraVerdict rv = lra_check(as_atoms(recent));
        if (auto* unsat = std::get_if<LraUnsat>(&rv)) {
          FarkasCertificate cert;
          for (const auto& [id, c] : unsat->certificate.coefficients) cert.coefficients.emplace(id + fresh_from, c);
          node.certificate = std::move(cert);
          return Outcome::Unsat;
        }
      }
      std::vector<Atom> atoms = as_atoms(terms_);
      LraVerdict v = lra_check(atoms);
      if (auto* unsat = std::get_if<LraUnsat>(&v)) {
        node.certificate = unsat->certificate;
        return Outcome::Unsat;
      }
      relaxed = concretize(atoms, std::get<LraSat>(v).model);
      bool integral = std::all_of(relaxed.begin(), relaxed.end(), [](const auto& e) { return is_integer(e.second); });
      if (integral) {
        model_ = relaxed;
        return Outcome::Sat;
      }
      if (round >= options_.cut_rounds) break;
      fresh_from = terms_.size();
      if (derive_cuts(node) == 0) break;
    }

    auto fractional = std::find_if(relaxed.begin(), relaxed.end(), [](const auto& e) { return !is_integer(e.second); });
    if (++branches_ > options_.branch_budget) return Outcome::ResourceOut;
    node.var = fractional->first;
    node.bound = floor_of(fractional->second);

    std::size_t mark = terms_.size();
    auto left = std::make_shared<ProofNode>();
    ProofConstraint lc;
    lc.origin = ProofConstraint::Origin::Branch;
    lc.term = LinTerm(Rational(node.bound)) - LinTerm::var(node.var);
    add(*left, std::move(lc));
    Outcome lo = solve(*left);
    truncate(mark);
    if (lo != Outcome::Unsat) return lo;

    auto right = std::make_shared<ProofNode>();
    ProofConstraint rc;
    rc.origin = ProofConstraint::Origin::Branch;
    rc.term = LinTerm::var(node.var) - LinTerm(Rational(node.bound + 1));
    add(*right, std::move(rc));
    Outcome ro = solve(*right);
    truncate(mark);
    if (ro != Outcome::Unsat) return ro;

    node.left = std::move(left);
    node.right = std::move(right);
    return Outcome::Unsat;
  }

  std::span<const Atom> atoms_;
  const LiaOptions& options_;
  std::vector<LinTerm> terms_;
  std::multiset<LinTerm, TermLess> known_;
  std::size_t branches_ = 0;
  Assignment model_;
};

/// Walks a proof, checking every constraint against its justification and
/// handing each node's path state to a visitor.
class ProofWalker {
 public:
  explicit ProofWalker(std::span<const Atom> atoms) : atoms_(atoms) {}

  std::vector<LinTerm> terms;

  void enter(const ProofNode& node, const ProofNode* parent, bool left_child) {
    std::size_t k = 0;
    for (const auto& c : node.added) {
      switch (c.origin) {
        case ProofConstraint::Origin::Input:
          if (parent != nullptr || c.input >= atoms_.size() || !atoms_[c.input].term.is_linear() ||
              compare(atoms_[c.input].linear(), c.term) != 0) {
            throw CertificateInvalid("proof input constraint does not match atom " + std::to_string(c.input));
          }
          break;
        case ProofConstraint::Origin::Branch: {
          if (parent == nullptr || k != 0) throw CertificateInvalid("misplaced branch constraint");
          LinTerm expected = left_child ? LinTerm(Rational(parent->bound)) - LinTerm::var(parent->var)
                                        : LinTerm::var(parent->var) - LinTerm(Rational(parent->bound + 1));
          if (compare(expected, c.term) != 0) throw CertificateInvalid("branch constraint does not match its split");
          break;
        }
        case ProofConstraint::Origin::Cut: {
          LinTerm sum;
          for (const auto& [p, w] : c.parents) {
            if (p >= terms.size() || w <= 0) throw CertificateInvalid("cut refers to an unknown constraint");
            sum += Rational(w) * terms[p];
          }
          if (c.divisor < 1 || coefficient_gcd(sum) % c.divisor != 0 ||
              compare(divide_floor(sum, c.divisor), c.term) != 0) {
            throw CertificateInvalid("cut does not follow from its parents");
          }
          break;
        }
      }
      terms.push_back(c.term);
      ++k;
    }
    if (node.is_leaf()) {
      validate_certificate(as_atoms(terms), *node.certificate);
    } else if (!node.left || !node.right) {
      throw CertificateInvalid("branch node without two children");
    }
  }

 private:
  std::span<const Atom> atoms_;
};

void validate_rec(ProofWalker& w, const ProofNode& node, const ProofNode* parent, bool left) {
  std::size_t mark = w.terms.size();
  w.enter(node, parent, left);
  if (!node.is_leaf()) {
    validate_rec(w, *node.left, &node, true);
    validate_rec(w, *node.right, &node, false);
  }
  w.terms.resize(mark);
}

class Interpolator {
 public:
  Interpolator(std::span<const Atom> all, std::size_t a_size, SymbolSet a_symbols)
      : walker_(all), a_size_(a_size), a_symbols_(std::move(a_symbols)) {}

  Formula run(const ProofNode& node, const ProofNode* parent, bool left) {
    std::size_t mark = walker_.terms.size();
    walker_.enter(node, parent, left);
    for (const auto& c : node.added) annotations_.push_back(annotate(c, parent));
    Formula result;
    if (node.is_leaf()) {
      ExtTerm sum;
      for (const auto& [id, coeff] : node.certificate->coefficients) sum += coeff * annotations_[id];
      sum *= Rational(sum.integral_scale());
      result = Formula::atom(Atom::leq0(std::move(sum)));
    } else {
      Formula i = run(*node.left, &node, true);
      Formula j = run(*node.right, &node, false);
      result = a_symbols_.contains(node.var) ? Formula::disj({i, j}) : Formula::conj({i, j});
    }
    walker_.terms.resize(mark);
    annotations_.resize(mark);
    return result;
  }

 private:
  ExtTerm annotate(const ProofConstraint& c, const ProofNode* parent) const {
    switch (c.origin) {
      case ProofConstraint::Origin::Input: return c.input < a_size_ ? ExtTerm(c.term) : ExtTerm();
      case ProofConstraint::Origin::Branch: return a_symbols_.contains(parent->var) ? ExtTerm(c.term) : ExtTerm();
      case ProofConstraint::Origin::Cut: {
        ExtTerm sum;
        for (const auto& [p, w] : c.parents) sum += Rational(w) * annotations_[p];
        return ExtTerm::quotient(sum, c.divisor);
      }
    }
    return {};
  }

  ProofWalker walker_;
  std::size_t a_size_;
  SymbolSet a_symbols_;
  std::vector<ExtTerm> annotations_;
};

}  // namespace

Atom gcd_cut(const Atom& ineq) {
  if (ineq.kind != AtomKind::Leq0 || !ineq.term.is_linear() || !ineq.linear().is_integral()) {
    throw InputError("gcd_cut expects an integral 0 <= t atom");
  }
  const LinTerm& t = ineq.linear();
  if (t.is_constant()) return ineq;
  BigInt g = coefficient_gcd(t);
  if (g == 1) return ineq;
  return Atom::leq0(ExtTerm(divide_floor(t, g)));
}

LiaVerdict lia_check(std::span<const Atom> atoms, const LiaOptions& options) {
  return Search(atoms, options).run();
}

void validate_proof(std::span<const Atom> atoms, const ProofNode& proof) {
  ProofWalker w(atoms);
  validate_rec(w, proof, nullptr, false);
}

Formula lia_interpolate(std::span<const Atom> a, std::span<const Atom> b, const ProofNode& proof) {
  std::vector<Atom> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  SymbolSet a_symbols;
  for (const auto& atom : a) atom.term.collect_symbols(a_symbols);
  Interpolator interp(all, a.size(), std::move(a_symbols));
  return interp.run(proof, nullptr, false);
}

namespace {

void stats_rec(const ProofNode& node, std::vector<const ProofConstraint*>& path, ProofStats& st) {
  std::size_t mark = path.size();
  for (const auto& c : node.added) path.push_back(&c);
  if (node.is_leaf()) {
    ++st.leaves;
    std::set<std::size_t> seen;
    std::vector<std::size_t> todo;
    for (const auto& [id, c] : node.certificate->coefficients) todo.push_back(id);
    while (!todo.empty()) {
      std::size_t id = todo.back();
      todo.pop_back();
      if (!seen.insert(id).second) continue;
      const ProofConstraint& c = *path[id];
      if (c.origin == ProofConstraint::Origin::Cut) {
        ++st.cuts_used;
        for (const auto& [p, w] : c.parents) todo.push_back(p);
      }
    }
  } else {
    ++st.branches;
    stats_rec(*node.left, path, st);
    stats_rec(*node.right, path, st);
  }
  path.resize(mark);
}

}  // namespace

ProofStats proof_stats(const ProofNode& proof) {
  ProofStats st;
  std::vector<const ProofConstraint*> path;
  stats_rec(proof, path, st);
  return st;
}

}  // namespace interpolmc
