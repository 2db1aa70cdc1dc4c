// SPDX-License-Identifier: Apache-2.0

#include "interpolmc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "interpolmc/cegar.hpp"
#include "interpolmc/errors.hpp"
#include "interpolmc/parse.hpp"
#include "interpolmc/print.hpp"

namespace interpolmc::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_trace(std::ostream& out, const std::vector<Symbol>& vars, const Trace& trace) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"step"};
  for (const auto& v : vars) header.push_back(v.name);
  rows.push_back(header);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (const auto& v : vars) row.push_back(print_literal(trace[i].at(v)));
    rows.push_back(row);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : "  ") << std::setw(static_cast<int>(width[c])) << row[c];
    }
    out << '\n';
  }
}

int report(std::ostream& out, const TransitionSystem& sys, const VerificationResult& r) {
  if (const auto* s = std::get_if<Safe>(&r)) {
    out << "SAFE\ninvariant " << print_formula(s->invariant) << '\n';
    return kUnsatOrSafe;
  }
  if (const auto* u = std::get_if<Unsafe>(&r)) {
    out << "UNSAFE\n";
    print_trace(out, sys.vars, u->trace);
    return kSatOrUnsafe;
  }
  out << "UNKNOWN " << std::get<Unknown>(r).reason << '\n';
  return kUnknown;
}

struct Options {
  std::string file;
  std::size_t branch_budget = LiaOptions{}.branch_budget;
  unsigned bound = 10;
  ImcConfig imc;
  CegarConfig cegar;
  std::string preds;

  InterpOptions interp() const {
    InterpOptions o;
    o.lia.branch_budget = branch_budget;
    return o;
  }
};

int cmd_interp(const Options& o, std::ostream& out) {
  Script s = parse_script(read_file(o.file));
  InterpolationResult r;
  if (s.command == Script::Command::TreeInterpolate) {
    r = tree_interpolant(s.tree_query(), s.logic, o.interp());
  } else {
    r = sequence_interpolant(s.sequence_parts(), s.logic, o.interp());
  }
  if (const auto* sat = std::get_if<NotUnsat>(&r)) {
    out << "sat\n" << print_assignment(sat->model) << '\n';
    return kSatOrUnsafe;
  }
  const auto& itps = std::get<Separators>(r).formulas;
  out << "unsat\n";
  if (s.command == Script::Command::TreeInterpolate) {
    // One per node; the root's is false by construction and omitted.
    TreeQuery q = s.tree_query();
    for (std::size_t v = 0; v < q.nodes.size(); ++v) {
      if (q.nodes[v].parent) out << print_formula(itps[v]) << '\n';
    }
  } else {
    // One per cut between consecutive partitions.
    for (std::size_t i = 1; i + 1 < itps.size(); ++i) out << print_formula(itps[i]) << '\n';
  }
  return kUnsatOrSafe;
}

int cmd_bmc(const Options& o, std::ostream& out) {
  TransitionSystem sys = parse_system(read_file(o.file)).system;
  BmcResult r = bmc(sys, o.bound, o.interp());
  if (const auto* u = std::get_if<Unsafe>(&r)) return report(out, sys, *u);
  out << "no counterexample up to bound " << std::get<NoCexUpTo>(r).k << '\n';
  return kUnsatOrSafe;
}

int cmd_imc(const Options& o, std::ostream& out) {
  TransitionSystem sys = parse_system(read_file(o.file)).system;
  ImcConfig cfg = o.imc;
  cfg.interp = o.interp();
  ImcStats st;
  VerificationResult r = imc(sys, cfg, &st);
  int code = report(out, sys, r);
  out << "iterations " << st.iterations << "\nrestarts " << st.restarts << "\nfinal-k " << st.final_k << '\n';
  return code;
}

int cmd_cegar(const Options& o, std::ostream& out) {
  SystemFile file = parse_system(read_file(o.file));
  CegarConfig cfg = o.cegar;
  cfg.abstraction.interp = o.interp();
  if (!o.preds.empty()) cfg.initial = PredicateSet(parse_predicates(read_file(o.preds), file.symbols));
  CegarStats st;
  VerificationResult r = cegar_loop(file.system, cfg, &st);
  int code = report(out, file.system, r);
  out << "refinements " << st.refinements << "\npredicates " << st.predicates.size() << '\n';
  for (const auto& p : st.predicates.items()) out << "  " << print_formula(p) << '\n';
  return code;
}

int cmd_check_invariant(const Options& o, std::ostream& out) {
  SystemFile file = parse_system(read_file(o.file));
  if (!file.invariant) throw InputError("system file has no (invariant ...) entry");
  InductiveReport rep = check_inductive(file.system, *file.invariant, o.interp());
  auto line = [&](const char* name, bool ok, const std::optional<Assignment>& cex) {
    out << name << ' ' << (ok ? "pass" : "fail");
    if (cex) out << ' ' << print_assignment(*cex);
    out << '\n';
  };
  line("initiation", rep.initiation, rep.initiation_cex);
  line("consecution", rep.consecution, rep.consecution_cex);
  line("sufficiency", rep.sufficiency, rep.sufficiency_cex);
  return rep.ok() ? kUnsatOrSafe : kSatOrUnsafe;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Craig interpolation and interpolation-based model checking", "interpolmc"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.file, what)->required();
    sub->add_option("--branch-budget", o.branch_budget, "branch-and-bound budget per integer query");
  };
  auto* interp = app.add_subcommand("interp", "binary, sequence or tree interpolants of a script");
  common(interp, "interpolation script");
  auto* bmc = app.add_subcommand("bmc", "bounded model checking");
  common(bmc, "transition system");
  bmc->add_option("--bound", o.bound, "maximal unrolling depth");
  auto* imc = app.add_subcommand("imc", "interpolation-based model checking");
  common(imc, "transition system");
  imc->add_option("--j", o.imc.j, "first step of the error window");
  imc->add_option("--k", o.imc.k, "initial bound");
  imc->add_option("--max-iters", o.imc.max_outer_iters, "separator computations per bound");
  imc->add_option("--max-k", o.imc.max_k, "largest bound before giving up");
  auto* cegar = app.add_subcommand("cegar", "predicate abstraction with interpolant refinement");
  common(cegar, "transition system");
  cegar->add_option("--max-refinements", o.cegar.max_refinements, "refinement limit");
  cegar->add_option("--preds", o.preds, "initial predicates, one formula per line");
  cegar->add_flag("--paper-literal-concretize", o.cegar.paper_literal,
                  "omit the abstract states from the path formula");
  auto* check = app.add_subcommand("check-invariant", "check the system file's (invariant ...) entry");
  common(check, "transition system");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kUnsatOrSafe : kInputError;
  }

  try {
    if (interp->parsed()) return cmd_interp(o, out);
    if (bmc->parsed()) return cmd_bmc(o, out);
    if (imc->parsed()) return cmd_imc(o, out);
    if (cegar->parsed()) return cmd_cegar(o, out);
    return cmd_check_invariant(o, out);
  } catch (const InputError& e) {
    err << "error: " << o.file << ": " << e.what() << '\n';
    return kInputError;
  } catch (const ResourceOut& e) {
    out << "UNKNOWN resource-out " << e.what() << '\n';
    return kUnknown;
  }
}

}  // namespace interpolmc::cli
