// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <variant>

#include "interpolmc/formula.hpp"

namespace interpolmc {

/// Nonnegative multipliers, keyed by input position, whose combination of
/// the input inequalities normalizes to a contradictory constant. Zero
/// entries are never stored.
struct FarkasCertificate {
  std::map<std::size_t, Rational> coefficients;

  friend bool operator==(const FarkasCertificate&, const FarkasCertificate&) = default;
};

using DeltaModel = std::map<Symbol, DeltaRational>;

struct LraSat {
  DeltaModel model;
};

struct LraUnsat {
  FarkasCertificate certificate;
};

using LraVerdict = std::variant<LraSat, LraUnsat>;

/// Decides a conjunction of 0 <= t / 0 < t atoms over the rationals.
/// Integer-sorted atoms are accepted and then decide the LRA relaxation.
LraVerdict lra_check(std::span<const Atom> atoms);

/// Weighted sum of the certified atoms; strict when some strict atom has a
/// positive weight.
struct Combination {
  LinTerm term;
  bool strict = false;
};

Combination combine(std::span<const Atom> atoms, const FarkasCertificate& cert);

/// Throws CertificateInvalid unless cert refutes atoms.
void validate_certificate(std::span<const Atom> atoms, const FarkasCertificate& cert);

/// Conclusion of an interpolating derivation: the inequality and its A-part.
/// `annotation_strict` records whether a strict A-atom contributed.
struct AnnotatedIneq {
  Atom ineq;
  LinTerm annotation;
  bool annotation_strict = false;
};

/// Replays cert through Hyp-A / Hyp-B / Comb / Simp, with A occupying
/// positions [0, |A|) and B positions [|A|, |A|+|B|) of the certificate.
AnnotatedIneq replay_annotated(std::span<const Atom> a, std::span<const Atom> b,
                               const FarkasCertificate& cert);

/// Separator 0 <= sum of A-weighted terms (0 < ... when strict).
Formula lra_interpolate(std::span<const Atom> a, std::span<const Atom> b, const FarkasCertificate& cert);

/// Value of delta used to turn a delta-model into a rational model: half of
/// the smallest positive bound ratio, capped at 1/2.
Rational admissible_delta(std::span<const Atom> atoms, const DeltaModel& model);

Assignment concretize(std::span<const Atom> atoms, const DeltaModel& model);

}  // namespace interpolmc
