// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/ts.hpp"

#include <algorithm>

#include "interpolmc/errors.hpp"

namespace interpolmc {

namespace {

void check_symbols(const Formula& f, const TransitionSystem& sys, unsigned max_index, const char* what) {
  for (const auto& s : f.symbols()) {
    bool known = s.index <= max_index &&
                 std::any_of(sys.vars.begin(), sys.vars.end(), [&](const Symbol& v) { return v.with_index(s.index) == s; });
    if (!known) throw InputError(std::string(what) + " mentions symbol '" + to_string(s) + "' outside the state variables");
  }
}

Formula unrolled_trans(const TransitionSystem& sys, unsigned from, unsigned to) {
  std::vector<Formula> steps;
  for (unsigned i = from; i < to; ++i) steps.push_back(at_step(sys.trans, i));
  return Formula::conj(std::move(steps));
}

/// State of step i with index-0 keys.
Assignment state_at(const TransitionSystem& sys, const Assignment& model, unsigned i) {
  Assignment s;
  for (const auto& v : sys.vars) {
    auto it = model.find(v.with_index(i));
    s.emplace(v, it == model.end() ? Rational(0) : it->second);
  }
  return s;
}

bool entails(const Formula& premise, const Formula& conclusion, Theory theory, const InterpOptions& options) {
  return !check_sat({premise, negate(conclusion)}, theory, options).has_value();
}

}  // namespace

void TransitionSystem::validate() const {
  for (const auto& v : vars) {
    if (v.index != 0) throw InputError("state variable '" + to_string(v) + "' must be unindexed");
    if (v.sort != theory_sort(theory)) {
      throw InputError("state variable '" + v.name + "' has the wrong sort for " + std::string(theory_name(theory)));
    }
  }
  check_symbols(init, *this, 0, "init");
  check_symbols(trans, *this, 1, "trans");
  check_symbols(error, *this, 0, "error");
}

Formula at_step(const Formula& f, unsigned step) { return f.shifted(static_cast<int>(step)); }

Trace extract_trace(const TransitionSystem& sys, const Assignment& model, unsigned last) {
  Trace t;
  for (unsigned i = 0; i <= last; ++i) t.push_back(state_at(sys, model, i));
  return t;
}

bool replays(const TransitionSystem& sys, const Trace& trace, std::size_t first_error, std::size_t last_error) {
  if (trace.empty() || !sys.init.evaluate(trace.front())) return false;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    Assignment pair = trace[i];
    for (const auto& [s, v] : trace[i + 1]) pair[s.with_index(1)] = v;
    if (!sys.trans.evaluate(pair)) return false;
  }
  for (std::size_t l = first_error; l < trace.size() && l <= last_error; ++l) {
    if (sys.error.evaluate(trace[l])) return true;
  }
  return false;
}

BmcResult bmc(const TransitionSystem& sys, unsigned k, const InterpOptions& options) {
  for (unsigned depth = 0; depth <= k; ++depth) {
    auto model = check_sat({at_step(sys.init, 0), unrolled_trans(sys, 0, depth), at_step(sys.error, depth)},
                           sys.theory, options);
    if (model) return Unsafe{extract_trace(sys, *model, depth)};
  }
  return NoCexUpTo{k};
}

InductiveReport check_inductive(const TransitionSystem& sys, const Formula& r, const InterpOptions& options) {
  check_symbols(r, sys, 0, "invariant");
  InductiveReport rep;
  rep.initiation_cex = check_sat({sys.init, negate(r)}, sys.theory, options);
  rep.consecution_cex = check_sat({r, sys.trans, negate(at_step(r, 1))}, sys.theory, options);
  rep.sufficiency_cex = check_sat({r, sys.error}, sys.theory, options);
  rep.initiation = !rep.initiation_cex;
  rep.consecution = !rep.consecution_cex;
  rep.sufficiency = !rep.sufficiency_cex;
  return rep;
}

VerificationResult imc(const TransitionSystem& sys, const ImcConfig& cfg, ImcStats* stats) {
  if (cfg.j < 1 || cfg.k < cfg.j) throw InputError("imc needs 1 <= j <= k");
  ImcStats local;
  ImcStats& st = stats != nullptr ? *stats : local;
  st = {};

  if (auto model = check_sat({sys.init, sys.error}, sys.theory, cfg.interp)) {
    return Unsafe{extract_trace(sys, *model, 0)};
  }

  auto verified = [&](const Formula& r) -> VerificationResult {
    Formula inv = r.fold_constants();
    if (!check_inductive(sys, inv, cfg.interp).ok()) return Unknown{"candidate invariant failed the inductiveness check"};
    return Safe{inv};
  };

  for (unsigned k = cfg.k;; ++k) {
    st.final_k = k;
    st.frames = {sys.init};
    Formula r = sys.init;
    // Suffix of the BMC query: remaining transitions and the error window.
    std::vector<Formula> errors;
    for (unsigned l = cfg.j; l <= k; ++l) errors.push_back(at_step(sys.error, l));
    Partition suffix{"B", Formula::conj({unrolled_trans(sys, 1, k), Formula::disj(errors)}), {}};

    bool restart = false;
    for (unsigned i = 0; !restart; ++i) {
      if (i >= cfg.max_outer_iters) return Unknown{"iteration limit reached"};
      ++st.iterations;
      Partition prefix{"A", Formula::conj({at_step(r, 0), at_step(sys.trans, 0)}), {}};
      InterpolationResult res = binary_interpolant(prefix, suffix, sys.theory, cfg.interp);
      if (auto* sat = std::get_if<NotUnsat>(&res)) {
        if (i == 0) {
          for (unsigned l = cfg.j; l <= k; ++l) {
            if (at_step(sys.error, l).evaluate(sat->model)) return Unsafe{extract_trace(sys, sat->model, l)};
          }
          return Unknown{"satisfiable query without an error step"};
        }
        // Case (ii): the over-approximation reached an error.
        if (k + 1 > cfg.max_k) return Unknown{"bound limit reached"};
        ++st.restarts;
        restart = true;
        continue;
      }
      Formula itp = std::get<Separators>(res).formulas.front().shifted(-1);
      Formula next = Formula::disj({r, itp});
      st.frames.push_back(next);
      if (entails(itp, r, sys.theory, cfg.interp)) return verified(r);
      if (entails(Formula::conj({next, sys.trans}), at_step(next, 1), sys.theory, cfg.interp)) return verified(next);
      r = next;
    }
  }
}

}  // namespace interpolmc
