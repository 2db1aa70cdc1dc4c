// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "interpolmc/interp.hpp"

namespace interpolmc {

/// State variables are index-0 symbols; trans refers to their primed
/// copies as index 1. Unrolling step i uses index i.
struct TransitionSystem {
  std::vector<Symbol> vars;
  Formula init;
  Formula trans;
  Formula error;
  Theory theory = Theory::LIA;

  /// Throws InputError on symbols outside x (init, error) or x, x' (trans),
  /// and on vars of the wrong sort.
  void validate() const;
};

/// One full valuation of the state variables per step, keyed by the
/// index-0 symbols.
using Trace = std::vector<Assignment>;

struct Safe {
  Formula invariant;
};

struct Unsafe {
  Trace trace;
};

struct Unknown {
  std::string reason;
};

using VerificationResult = std::variant<Safe, Unsafe, Unknown>;

struct NoCexUpTo {
  unsigned k = 0;
};

using BmcResult = std::variant<Unsafe, NoCexUpTo>;

/// Formula over x copied to step `step` (x_step, and x_{step+1} for x').
Formula at_step(const Formula& f, unsigned step);

/// Depths 0..k in turn, so a returned trace is a shortest one.
BmcResult bmc(const TransitionSystem& sys, unsigned k, const InterpOptions& options = {});

struct ImcConfig {
  unsigned j = 1;
  unsigned k = 1;
  unsigned max_outer_iters = 50;
  unsigned max_k = 20;
  InterpOptions interp;
};

struct ImcStats {
  unsigned iterations = 0;  // separator computations across all restarts
  unsigned restarts = 0;    // case (ii) occurrences
  unsigned final_k = 0;
  std::vector<Formula> frames;  // R_0, R_1, ... of the last restart
};

VerificationResult imc(const TransitionSystem& sys, const ImcConfig& cfg, ImcStats* stats = nullptr);

struct InductiveReport {
  bool initiation = false;
  bool consecution = false;
  bool sufficiency = false;
  /// Countermodels of failed clauses. Consecution's spans steps 0 and 1.
  std::optional<Assignment> initiation_cex;
  std::optional<Assignment> consecution_cex;
  std::optional<Assignment> sufficiency_cex;

  bool ok() const { return initiation && consecution && sufficiency; }
};

InductiveReport check_inductive(const TransitionSystem& sys, const Formula& r, const InterpOptions& options = {});

/// init at step 0, trans between consecutive steps, error at some step in
/// [first_error, last_error]; evaluation only.
bool replays(const TransitionSystem& sys, const Trace& trace, std::size_t first_error = 0,
             std::size_t last_error = static_cast<std::size_t>(-1));

/// States of steps 0..last read off an unrolled model.
Trace extract_trace(const TransitionSystem& sys, const Assignment& model, unsigned last);

}  // namespace interpolmc
