// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "interpolmc/lra.hpp"

namespace interpolmc {

/// Div rule: divides the non-constant coefficients of an integer 0 <= t by
/// their gcd and floors the constant. Returns the input when the gcd is 1
/// or the term is constant.
Atom gcd_cut(const Atom& ineq);

/// One inequality 0 <= term on a proof path.
struct ProofConstraint {
  enum class Origin { Input, Branch, Cut };

  Origin origin = Origin::Input;
  LinTerm term;
  std::size_t input = 0;  // Input: position in the checked atom list
  /// Cut: term = floor-divided (sum of weight * parent term) / divisor.
  std::vector<std::pair<std::size_t, BigInt>> parents;
  BigInt divisor = 1;
};

/// Branch-and-bound / cutting-planes refutation. Constraint ids are
/// positions in the list accumulated along the root-to-node path: the
/// root's `added` starts with the inputs in order, each child's `added`
/// starts with its branch constraint.
struct ProofNode {
  std::vector<ProofConstraint> added;

  std::optional<FarkasCertificate> certificate;  // set on leaves

  Symbol var;  // branches: left has 0 <= bound - var, right 0 <= var - bound - 1
  BigInt bound;
  std::shared_ptr<const ProofNode> left;
  std::shared_ptr<const ProofNode> right;

  bool is_leaf() const { return certificate.has_value(); }
};

struct LiaOptions {
  std::size_t branch_budget = 10000;
  unsigned cut_rounds = 2;
  std::size_t max_cuts_per_round = 64;
};

struct LiaSat {
  Assignment model;
};

struct LiaUnsat {
  std::shared_ptr<const ProofNode> proof;
};

struct LiaResourceOut {};

using LiaVerdict = std::variant<LiaSat, LiaUnsat, LiaResourceOut>;

/// Decides a conjunction of integer 0 <= t atoms with integral coefficients:
/// relaxation, eager gcd cuts on every added and derived inequality, then
/// branching on the canonically smallest fractional symbol.
LiaVerdict lia_check(std::span<const Atom> atoms, const LiaOptions& options = {});

/// Throws CertificateInvalid unless proof refutes atoms.
void validate_proof(std::span<const Atom> atoms, const ProofNode& proof);

/// Interpolant of a proof for A ∪ B (A at positions [0, |A|)). Branches on
/// A-symbols join with ∨, on B-only symbols with ∧; cuts divide the
/// annotation with ÷.
Formula lia_interpolate(std::span<const Atom> a, std::span<const Atom> b, const ProofNode& proof);

struct ProofStats {
  std::size_t branches = 0;
  std::size_t leaves = 0;
  std::size_t cuts_used = 0;  // cuts reachable from some leaf certificate
};

ProofStats proof_stats(const ProofNode& proof);

}  // namespace interpolmc
