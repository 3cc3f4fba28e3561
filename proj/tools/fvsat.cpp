// Command-line front end: fvsat <command> [options]
//
// Exit codes: 0 sat/valid/true, 1 fail/invalid/false, 2 unknown/diverged,
// 3 usage error, 4 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fvsat/constraints.hpp"
#include "fvsat/contracting.hpp"
#include "fvsat/ordering.hpp"
#include "fvsat/rewrite.hpp"
#include "fvsat/saturate.hpp"
#include "fvsat/subterm_solver.hpp"
#include "fvsat/theories.hpp"
#include "fvsat/variants.hpp"

using json = nlohmann::ordered_json;
using namespace fvsat;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;
constexpr int kExitInput = 4;

constexpr const char* kBoundEnv = "FVSAT_BOUND";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A required option is missing or options conflict.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string theory_file;
  std::string builtin_name;
  std::optional<std::size_t> bound;
  std::size_t redundancy_steps = 0;
  bool delete_trivial = false;
  bool json = false;
  bool resaturate = false;
  bool emit_theory = false;
  bool subterm = false;
  bool initial = false;
  std::string term;
  std::string rule;
  std::string constraints_file;
  std::string knowledge;
  std::string goal;
  std::size_t depth = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TheoryBundle load_theory(const Options& o) {
  if (!o.theory_file.empty() && !o.builtin_name.empty())
    throw UsageError("give either --theory or --builtin, not both");
  if (!o.theory_file.empty()) {
    try {
      return parse_theory(read_file(o.theory_file));
    } catch (const ParseError& e) {
      throw InputError(o.theory_file + ":" + std::to_string(e.line()) + ":" +
                       std::to_string(e.column()) + ": " + e.what());
    }
  }
  if (!o.builtin_name.empty()) {
    try {
      return builtin(o.builtin_name);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  throw UsageError("a theory is required: --theory FILE or --builtin NAME");
}

/// The explicit --bound, else the environment override, else `fallback`.
std::size_t bound_or(const Options& o, std::size_t fallback) {
  if (o.bound) return *o.bound;
  if (const char* env = std::getenv(kBoundEnv)) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw InputError(std::string(kBoundEnv) + " must be a positive integer");
    return v;
  }
  return fallback;
}

json base_report(const std::string& command, const TheoryBundle& b) {
  json j;
  j["schema"] = "fvsat-report";
  j["version"] = kSchemaVersion;
  j["command"] = command;
  j["theory"] = b.name;
  return j;
}

std::map<VarId, std::string> invert(const std::map<std::string, VarId>& names) {
  std::map<VarId, std::string> out;
  for (const auto& [n, v] : names) out[v] = n;
  return out;
}

std::string show(const Term& t, const std::map<VarId, std::string>& names) {
  // Variables not named by the user fall back to canonical names.
  auto all = names;
  std::size_t k = 0;
  for (auto v : vars(t))
    if (!all.count(v)) all[v] = "_" + std::to_string(k++);
  return to_string(t, all);
}

json rule_json(const DeductionRule& r, const Signature& sig) {
  json j;
  j["rule"] = to_string(r);
  j["kind"] = to_string(classify(r, sig));
  return j;
}

SaturationConfig saturation_config(const Options& o) {
  SaturationConfig cfg;
  cfg.delete_trivial = o.delete_trivial;
  cfg.redundancy_steps = o.redundancy_steps;
  cfg.max_rounds = bound_or(o, cfg.max_rounds);
  return cfg;
}

json saturation_json(const SaturationResult& res, const Signature& sig) {
  json j;
  j["status"] = res.status == SaturationStatus::Converged ? "converged" : "diverged";
  if (!res.reason.empty()) j["reason"] = res.reason;
  json rules = json::array();
  for (const auto& r : res.rules) {
    json e = rule_json(r.rule, sig);
    e["generation"] = r.generation;
    e["parents"] = r.parents;
    rules.push_back(e);
  }
  j["rules"] = rules;
  j["dropped"] = {{"trivial", res.dropped_trivial},
                  {"redundant", res.dropped_redundant},
                  {"duplicate", res.dropped_duplicate}};
  if (!res.offending.empty()) {
    json off = json::array();
    for (const auto& r : res.offending) off.push_back(to_string(r));
    j["offending"] = off;
  }
  return j;
}

void print_saturation(const SaturationResult& res, const Signature& sig) {
  std::cout << (res.status == SaturationStatus::Converged ? "converged" : "diverged") << ": "
            << res.rules.size() << " rules";
  if (!res.reason.empty()) std::cout << " (" << res.reason << ")";
  std::cout << "\n";
  for (const auto& r : res.rules)
    std::cout << "  " << (classify(r.rule, sig) == RuleKind::Increasing ? "inc " : "dec ")
              << to_string(r.rule) << "\n";
  if (!res.offending.empty()) {
    std::cout << "offending lineage:\n";
    for (const auto& r : res.offending) std::cout << "  " << to_string(r) << "\n";
  }
}

/// The saturated rules an analysis command works with: the theory's own
/// saturated section unless --resaturate, else a fresh saturation.
/// Returns nullopt (after reporting) when saturation diverges.
std::optional<std::vector<DeductionRule>> saturated_rules(const TheoryBundle& b, const Options& o,
                                                          json& report) {
  if (!b.saturated.empty() && !o.resaturate) {
    report["saturation"] = "theory";
    return b.saturated;
  }
  SaturationConfig cfg;
  cfg.delete_trivial = o.delete_trivial;
  cfg.redundancy_steps = o.redundancy_steps;
  SaturationResult res = saturate(b.L0, b.R, b.sig, cfg);
  report["saturation"] = res.status == SaturationStatus::Converged ? "computed" : "diverged";
  if (res.status == SaturationStatus::Diverged) {
    report["saturation_report"] = saturation_json(res, b.sig);
    if (!o.json) {
      std::cout << "saturation diverged; try --redundancy-steps\n";
      print_saturation(res, b.sig);
    }
    return std::nullopt;
  }
  return res.plain_rules();
}

void emit(const Options& o, const json& report) {
  if (o.json) std::cout << report.dump(2) << "\n";
}

ParsedConstraints load_constraints(const Options& o, TheoryBundle& b) {
  if (o.constraints_file.empty()) throw UsageError("--constraints FILE is required");
  try {
    return parse_constraints(read_file(o.constraints_file), b.sig);
  } catch (const ParseError& e) {
    throw InputError(o.constraints_file + ":" + std::to_string(e.line()) + ":" +
                     std::to_string(e.column()) + ": " + e.what());
  }
}

Term parse_arg_term(const std::string& text, const char* flag, TheoryBundle& b,
                    std::map<std::string, VarId>& names) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  try {
    return parse_term(text, b.sig, names);
  } catch (const ParseError& e) {
    throw InputError(std::string(flag) + ": column " + std::to_string(e.column()) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_normalize(const Options& o) {
  TheoryBundle b = load_theory(o);
  std::map<std::string, VarId> names;
  Term t = parse_arg_term(o.term, "--term", b, names);
  json report = base_report("normalize", b);
  auto nm = invert(names);
  Term n = normalize(t, b.R, bound_or(o, kDefaultStepBudget));
  report["term"] = show(t, nm);
  report["normal_form"] = show(n, nm);
  if (!o.json) std::cout << show(n, nm) << "\n";
  emit(o, report);
  return kExitTrue;
}

int cmd_variants(const Options& o) {
  TheoryBundle b = load_theory(o);
  std::map<std::string, VarId> names;
  Term t = parse_arg_term(o.term, "--term", b, names);
  json report = base_report("variants", b);
  auto nm = invert(names);
  std::size_t depth = o.depth ? o.depth : bound_or(o, kDefaultVariantDepth);
  auto vs = variants(t, b.R, depth);
  json arr = json::array();
  for (const auto& v : vs) {
    // Name the fresh variables of each variant consistently.
    std::vector<Term> parts{v.reduct};
    for (const auto& [x, s] : v.theta.map()) parts.push_back(s);
    auto all = nm;
    auto canon = canonical_var_names(parts);
    for (const auto& [id, n] : canon)
      if (!all.count(id)) all[id] = "_" + n;
    json theta = json::object();
    std::string line = "{";
    bool first = true;
    for (const auto& [x, s] : v.theta.map()) {
      std::string xs = all.count(x) ? all.at(x) : to_string(Term::var(x), all);
      theta[xs] = to_string(s, all);
      line += (first ? "" : ", ") + xs + " -> " + to_string(s, all);
      first = false;
    }
    line += "}";
    arr.push_back({{"theta", theta}, {"reduct", to_string(v.reduct, all)}});
    if (!o.json) std::cout << line << "  " << to_string(v.reduct, all) << "\n";
  }
  report["term"] = show(t, nm);
  report["variants"] = arr;
  emit(o, report);
  return kExitTrue;
}

int cmd_saturate(const Options& o) {
  TheoryBundle b = load_theory(o);
  SaturationResult res = saturate(b.L0, b.R, b.sig, saturation_config(o));
  json report = base_report("saturate", b);
  report["config"] = {{"delete_trivial", o.delete_trivial},
                      {"redundancy_steps", o.redundancy_steps}};
  report["result"] = saturation_json(res, b.sig);
  if (o.emit_theory && !o.json) {
    TheoryBundle out = b;
    out.saturated = res.plain_rules();
    std::cout << serialize(out);
  } else if (!o.json) {
    print_saturation(res, b.sig);
  }
  emit(o, report);
  return res.status == SaturationStatus::Converged ? kExitTrue : kExitUnknown;
}

int cmd_classify(const Options& o) {
  TheoryBundle b = load_theory(o);
  json report = base_report("classify", b);
  std::vector<DeductionRule> rules;
  if (!o.rule.empty()) {
    try {
      TheoryBundle probe = b;
      probe.saturated.clear();
      std::string text = serialize(probe) + "saturated\n  " + o.rule + "\n";
      rules = parse_theory(text).saturated;
    } catch (const ParseError& e) {
      throw InputError(std::string("--rule: ") + e.what());
    }
  } else {
    auto sat = saturated_rules(b, o, report);
    if (!sat) {
      emit(o, report);
      return kExitUnknown;
    }
    rules = *sat;
  }
  json arr = json::array();
  for (const auto& r : rules) {
    arr.push_back(rule_json(r, b.sig));
    if (!o.json) std::cout << to_string(classify(r, b.sig)) << "  " << to_string(r) << "\n";
  }
  report["rules"] = arr;
  emit(o, report);
  return kExitTrue;
}

int cmd_contracting(const Options& o) {
  TheoryBundle b = load_theory(o);
  json report = base_report("contracting", b);
  auto rules = saturated_rules(b, o, report);
  if (!rules) {
    emit(o, report);
    return kExitUnknown;
  }
  ContractingReport rep = is_contracting(*rules, b.sig);
  json arr = json::array();
  json counter = json::array();
  for (std::size_t i = 0; i < rules->size(); ++i) {
    json e = rule_json((*rules)[i], b.sig);
    e["measure"] = to_string(rep.measures[i]);
    arr.push_back(e);
    if (!rep.measures[i].positive()) counter.push_back(e);
    if (!o.json)
      std::cout << (rep.measures[i].positive() ? "  ok  " : "  BAD ") << "mu="
                << to_string(rep.measures[i]) << "  " << to_string((*rules)[i]) << "\n";
  }
  report["contracting"] = rep.contracting;
  report["rules"] = arr;
  report["counterexamples"] = counter;
  if (!o.json) std::cout << "contracting: " << (rep.contracting ? "yes" : "no") << "\n";
  emit(o, report);
  return rep.contracting ? kExitTrue : kExitFalse;
}

json derivation_json(const Derivation& d) {
  json arr = json::array();
  for (const auto& s : d)
    arr.push_back({{"rule", to_string(s.rule)}, {"conclusion", to_string(s.conclusion)}});
  return arr;
}

int cmd_ground(const Options& o) {
  TheoryBundle b = load_theory(o);
  ParsedConstraints pc = load_constraints(o, b);
  if (!pc.system.ground() || !pc.system.equations.empty())
    throw InputError("ground expects ground deduction constraints without equations");
  json report = base_report("ground", b);
  auto rules = saturated_rules(b, o, report);
  if (!rules) {
    emit(o, report);
    return kExitUnknown;
  }
  ConstraintSystem G;
  for (const auto& c : pc.system.constraints) {
    std::vector<Term> E;
    for (const auto& e : c.knowledge) E.push_back(normalize(e, b.R));
    G.constraints.push_back(Constraint{make_knowledge(E), normalize(c.goal, b.R)});
  }
  GroundResult res = decide_ground(G, SolverRules::from(*rules, b.sig));
  report["valid"] = res.valid;
  if (res.valid) {
    json ds = json::array();
    for (const auto& d : res.derivations) ds.push_back(derivation_json(d));
    report["derivations"] = ds;
  }
  if (!o.json) {
    std::cout << (res.valid ? "valid" : "invalid") << "\n";
    if (res.valid)
      for (std::size_t i = 0; i < res.derivations.size(); ++i) {
        std::cout << "constraint " << i + 1 << ":\n";
        for (const auto& s : res.derivations[i])
          std::cout << "  " << to_string(s.conclusion) << "    by " << to_string(s.rule) << "\n";
      }
  }
  emit(o, report);
  return res.valid ? kExitTrue : kExitFalse;
}

int cmd_solve(const Options& o) {
  TheoryBundle b = load_theory(o);
  ParsedConstraints pc = load_constraints(o, b);
  json report = base_report("solve", b);
  report["solver"] = o.subterm ? "subterm" : "general";
  SystemResult res;
  if (o.subterm) {
    if (!check_subterm_convergent(b.R))
      throw InputError("--subterm needs a subterm convergent theory");
    SaturationConfig cfg;
    cfg.redundancy_steps = o.redundancy_steps;
    SaturationResult sat = saturate_subterm(b.L0, b.R, b.sig, cfg);
    if (sat.status == SaturationStatus::Diverged) {
      report["saturation"] = "diverged";
      report["saturation_report"] = saturation_json(sat, b.sig);
      if (!o.json) print_saturation(sat, b.sig);
      emit(o, report);
      return kExitUnknown;
    }
    report["saturation"] = "computed";
    res = solve_system_subterm(pc.system, b.R, SolverRules::from(sat));
  } else {
    auto rules = saturated_rules(b, o, report);
    if (!rules) {
      emit(o, report);
      return kExitUnknown;
    }
    SolveOptions opt;
    opt.node_budget = bound_or(o, kDefaultNodeBudget);
    res = solve_system(pc.system, b.R, SolverRules::from(*rules, b.sig), opt);
  }
  auto nm = invert(pc.variables);
  report["status"] = to_string(res.status);
  json w = json::object();
  for (const auto& [name, v] : pc.variables)
    if (const Term* t = res.witness.lookup(v)) w[name] = to_string(*t);
  if (res.status == SolveStatus::Sat) report["witness"] = w;
  report["branches"] = res.branches;
  report["nodes"] = res.stats.nodes;
  if (!o.json) {
    std::cout << to_string(res.status) << "\n";
    if (res.status == SolveStatus::Sat)
      for (const auto& [name, v] : pc.variables)
        if (const Term* t = res.witness.lookup(v))
          std::cout << "  " << name << " = " << to_string(*t) << "\n";
  }
  emit(o, report);
  switch (res.status) {
    case SolveStatus::Sat: return kExitTrue;
    case SolveStatus::Fail: return kExitFalse;
    case SolveStatus::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int cmd_oracle(const Options& o) {
  TheoryBundle b = load_theory(o);
  std::map<std::string, VarId> names;
  std::vector<Term> E;
  try {
    E = parse_terms(o.knowledge, b.sig, names);
  } catch (const ParseError& e) {
    throw InputError(std::string("--knowledge: ") + e.what());
  }
  std::optional<Term> goal;
  if (!o.goal.empty()) goal = parse_arg_term(o.goal, "--goal", b, names);
  if (!names.empty()) throw InputError("oracle expects ground terms");
  json report = base_report("oracle", b);
  TermSet known;
  for (const auto& e : E) known.insert(normalize(e, b.R));
  std::size_t depth = o.depth ? o.depth : bound_or(o, 3);
  DeductionSystem sys;
  const RewriteSystem* R = nullptr;
  if (o.initial) {
    sys.rules = b.L0;
    sys.mode = DeductionMode::ModuloTheory;
    R = &b.R;
  } else {
    auto rules = saturated_rules(b, o, report);
    if (!rules) {
      emit(o, report);
      return kExitUnknown;
    }
    sys.rules = *rules;
  }
  OracleOptions opt;
  if (goal) opt.focus = TermSet{normalize(*goal, b.R)};
  TermSet closure = oracle_closure(known, sys, depth, R, opt);
  report["depth"] = depth;
  report["size"] = closure.size();
  json terms = json::array();
  for (const auto& t : closure) terms.push_back(to_string(t));
  report["closure"] = terms;
  int code = kExitTrue;
  if (goal) {
    bool found = closure.count(normalize(*goal, b.R)) > 0;
    report["goal_derived"] = found;
    code = found ? kExitTrue : kExitFalse;
    if (!o.json) std::cout << (found ? "derived" : "not derived") << " within depth " << depth << "\n";
  } else if (!o.json) {
    for (const auto& t : closure) std::cout << to_string(t) << "\n";
  }
  emit(o, report);
  return code;
}

int cmd_check_theory(const Options& o) {
  TheoryBundle b = load_theory(o);
  json report = base_report("check-theory", b);
  bool oriented = check_lpo_oriented(b.R, b.sig);
  auto cps = critical_pairs(b.R);
  bool joinable = critical_pairs_joinable(b.R);
  bool subterm = check_subterm_convergent(b.R);
  bool fvp = true;
  std::string fvp_error;
  for (const auto& r : b.L0) {
    try {
      variants(r.rhs, b.R);
    } catch (const FvpViolation& e) {
      fvp = false;
      fvp_error = e.what();
      break;
    }
  }
  json cp = json::array();
  for (const auto& c : cps) {
    bool ok = normalize(c.left, b.R) == normalize(c.right, b.R);
    cp.push_back({{"left", to_string(c.left)}, {"right", to_string(c.right)}, {"joinable", ok}});
  }
  report["symbols"] = b.sig.functions().size();
  report["rewrite_rules"] = b.R.rules.size();
  report["deduction_rules"] = b.L0.size();
  report["oriented"] = oriented;
  report["critical_pairs"] = cp;
  report["joinable"] = joinable;
  report["subterm_convergent"] = subterm;
  report["finite_variants"] = fvp;
  if (!fvp) report["finite_variants_error"] = fvp_error;
  bool ok = oriented && joinable && fvp;
  report["ok"] = ok;
  if (!o.json) {
    std::cout << "theory " << b.name << ": " << b.sig.functions().size() << " symbols, "
              << b.R.rules.size() << " rewrite rules, " << b.L0.size() << " deduction rules\n"
              << "  oriented:           " << (oriented ? "yes" : "no") << "\n"
              << "  critical pairs:     " << cps.size() << (joinable ? ", all joinable" : ", NOT joinable")
              << "\n"
              << "  finite variants:    " << (fvp ? "yes" : "no (" + fvp_error + ")") << "\n"
              << "  subterm convergent: " << (subterm ? "yes" : "no") << "\n";
  }
  emit(o, report);
  return ok ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation-based intruder deduction and constraint solving"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    auto* th = c->add_option("--theory", o.theory_file, "Theory file");
    auto* bi = c->add_option("--builtin", o.builtin_name, "Built-in theory: dy, dsks, blind, twostack");
    th->excludes(bi);
    c->add_option("--bound", o.bound,
                  std::string("Resource bound of the command (env ") + kBoundEnv + " overrides the default)");
    c->add_option("--redundancy-steps", o.redundancy_steps,
                  "Drop new increasing rules derivable in this many steps (0 = off)");
    c->add_flag("--delete-trivial", o.delete_trivial, "Leave rules whose rhs is a premise out");
    c->add_flag("--json", o.json, "Machine-readable report");
  };
  auto analysis = [&](CLI::App* c) {
    c->add_flag("--resaturate", o.resaturate, "Ignore the theory's saturated section");
  };

  auto* normalize_cmd = app.add_subcommand("normalize", "Normal form of a term");
  common(normalize_cmd);
  normalize_cmd->add_option("--term", o.term, "Term")->required();

  auto* variants_cmd = app.add_subcommand("variants", "Finite variants of a term");
  common(variants_cmd);
  variants_cmd->add_option("--term", o.term, "Term")->required();
  variants_cmd->add_option("--depth", o.depth, "Narrowing depth bound");

  auto* saturate_cmd = app.add_subcommand("saturate", "Saturate the deduction rules");
  common(saturate_cmd);
  saturate_cmd->add_flag("--emit-theory", o.emit_theory, "Print the theory with a saturated section");

  auto* classify_cmd = app.add_subcommand("classify", "Classify saturated rules");
  common(classify_cmd);
  analysis(classify_cmd);
  classify_cmd->add_option("--rule", o.rule, "Classify this rule instead, e.g. 'X, Y => f(X,Y)'");

  auto* contracting_cmd = app.add_subcommand("contracting", "Check the contracting criterion");
  common(contracting_cmd);
  analysis(contracting_cmd);

  auto* ground_cmd = app.add_subcommand("ground", "Decide a ground constraint system");
  common(ground_cmd);
  analysis(ground_cmd);
  ground_cmd->add_option("--constraints", o.constraints_file, "Constraint file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Solve a constraint system");
  common(solve_cmd);
  analysis(solve_cmd);
  solve_cmd->add_option("--constraints", o.constraints_file, "Constraint file")->required();
  solve_cmd->add_flag("--subterm", o.subterm, "Use the solver for subterm convergent theories");

  auto* oracle_cmd = app.add_subcommand("oracle", "Bounded brute-force deduction closure");
  common(oracle_cmd);
  analysis(oracle_cmd);
  oracle_cmd->add_option("--knowledge", o.knowledge, "Comma-separated ground terms")->required();
  oracle_cmd->add_option("--goal", o.goal, "Report whether this term is derived");
  oracle_cmd->add_option("--depth", o.depth, "Rounds of rule application (default 3)");
  oracle_cmd->add_flag("--initial", o.initial, "Use the initial rules modulo the rewrite system");

  auto* check_cmd = app.add_subcommand("check-theory", "Validate a theory");
  common(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*normalize_cmd) return cmd_normalize(o);
    if (*variants_cmd) return cmd_variants(o);
    if (*saturate_cmd) return cmd_saturate(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*contracting_cmd) return cmd_contracting(o);
    if (*ground_cmd) return cmd_ground(o);
    if (*solve_cmd) return cmd_solve(o);
    if (*oracle_cmd) return cmd_oracle(o);
    if (*check_cmd) return cmd_check_theory(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const FvpViolation& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
