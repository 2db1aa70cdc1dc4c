// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/lra.hpp"

#include <algorithm>
#include <vector>

#include "interpolmc/errors.hpp"
#include "simplex.hpp"

namespace interpolmc {

LraVerdict lra_check(std::span<const Atom> atoms) { return detail::Simplex(atoms).check(); }

Combination combine(std::span<const Atom> atoms, const FarkasCertificate& cert) {
  Combination out;
  for (const auto& [id, c] : cert.coefficients) {
    if (id >= atoms.size()) throw CertificateInvalid("certificate refers to unknown atom " + std::to_string(id));
    if (c < 0) throw CertificateInvalid("negative certificate coefficient");
    const Atom& a = atoms[id];
    if (!a.is_inequality() || !a.term.is_linear()) throw CertificateInvalid("certificate over a non-inequality");
    out.term += c * a.linear();
    if (c > 0 && a.kind == AtomKind::Lt0) out.strict = true;
  }
  return out;
}

void validate_certificate(std::span<const Atom> atoms, const FarkasCertificate& cert) {
  bool positive = std::any_of(cert.coefficients.begin(), cert.coefficients.end(),
                              [](const auto& e) { return e.second > 0; });
  if (!positive) throw CertificateInvalid("certificate has no positive coefficient");
  Combination comb = combine(atoms, cert);
  if (!comb.term.is_constant()) throw CertificateInvalid("certificate combination is not constant");
  const Rational& c = comb.term.constant();
  if (!(c < 0 || (c == 0 && comb.strict))) throw CertificateInvalid("certificate combination is not contradictory");
}

AnnotatedIneq replay_annotated(std::span<const Atom> a, std::span<const Atom> b, const FarkasCertificate& cert) {
  std::vector<Atom> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  validate_certificate(all, cert);

  // Hyp-A annotates with the atom's own term, Hyp-B with 0; Comb adds both
  // sides with the certificate weights; Simp is normalization.
  LinTerm ineq;
  LinTerm annotation;
  bool strict = false;
  bool annotation_strict = false;
  for (const auto& [id, c] : cert.coefficients) {
    const Atom& atom = all[id];
    bool is_strict = atom.kind == AtomKind::Lt0;
    ineq += c * atom.linear();
    strict = strict || is_strict;
    if (id < a.size()) {
      annotation += c * atom.linear();
      annotation_strict = annotation_strict || is_strict;
    }
  }
  return {strict ? Atom::lt0(ExtTerm(ineq)) : Atom::leq0(ExtTerm(ineq)), annotation, annotation_strict};
}

Formula lra_interpolate(std::span<const Atom> a, std::span<const Atom> b, const FarkasCertificate& cert) {
  AnnotatedIneq ann = replay_annotated(a, b, cert);
  ExtTerm t(ann.annotation);
  return Formula::atom(ann.annotation_strict ? Atom::lt0(t) : Atom::leq0(t));
}

Rational admissible_delta(std::span<const Atom> atoms, const DeltaModel& model) {
  Rational bound(1);
  for (const auto& atom : atoms) {
    if (!atom.is_inequality() || !atom.term.is_linear()) continue;
    const LinTerm& t = atom.linear();
    DeltaRational v(t.constant());
    for (const auto& [s, c] : t.coeffs()) {
      auto it = model.find(s);
      if (it != model.end()) v = v + c * it->second;
    }
    // 0 <= v - (0 or delta)
    Rational real_slack = v.real;
    Rational delta_slack = v.delta - (atom.kind == AtomKind::Lt0 ? 1 : 0);
    if (real_slack > 0 && delta_slack < 0) bound = std::min(bound, Rational(real_slack / -delta_slack));
  }
  return bound / 2;
}

Assignment concretize(std::span<const Atom> atoms, const DeltaModel& model) {
  Rational delta = admissible_delta(atoms, model);
  Assignment out;
  for (const auto& [s, v] : model) out.emplace(s, v.at(delta));
  return out;
}

}  // namespace interpolmc
