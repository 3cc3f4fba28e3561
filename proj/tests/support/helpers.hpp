#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "fvsat/theories.hpp"
#include "oracles.hpp"

namespace testing_support {

/// Parses terms and rules against a theory, sharing variable names across
/// calls so that `X` means the same variable everywhere in one test.
struct Parser {
  fvsat::TheoryBundle theory;
  std::map<std::string, fvsat::VarId> vars;

  explicit Parser(fvsat::TheoryBundle b) : theory(std::move(b)) {}
  explicit Parser(const std::string& builtin_name) : theory(fvsat::builtin(builtin_name)) {}

  fvsat::Term operator()(const std::string& text) {
    return fvsat::parse_term(text, theory.sig, vars);
  }
  fvsat::TermSet set(const std::string& text) {
    auto ts = fvsat::parse_terms(text, theory.sig, vars);
    return fvsat::TermSet(ts.begin(), ts.end());
  }
  fvsat::VarId var(const std::string& name) { return (*this)(name).var_id(); }

  /// "t1, t2 => r" with variables shared with terms parsed earlier.
  fvsat::DeductionRule rule(const std::string& text) {
    auto at = text.find("=>");
    fvsat::DeductionRule r;
    r.lhs = set(text.substr(0, at));
    r.rhs = (*this)(text.substr(at + 2));
    return r;
  }
};

/// A signature with f/2, g/1, h/1 and constants a, b, c; precedence in that
/// order.
inline fvsat::TheoryBundle small_theory() {
  return fvsat::parse_theory(
      "theory small\n"
      "signature\n  f/2 g/1 h/1 a/0 b/0 c/0\n");
}

/// Random well-formed system over the Dolev-Yao signature: up to three
/// constraints with goals V1.., growing knowledge that may mention earlier
/// goals, and some equations fixing goals. Terms are not normalized, so
/// preparation has variants to explore.
inline fvsat::ConstraintSystem random_dy_system(Parser& p, oracle::Gen& gen) {
  using fvsat::Term;
  std::vector<std::pair<std::string, std::size_t>> build{
      {"pair", 2}, {"encs", 2}, {"enca", 2}, {"pk", 1}, {"sk", 1}};
  std::vector<std::pair<std::string, std::size_t>> any = build;
  any.insert(any.end(), {{"fst", 1}, {"decs", 2}});
  std::vector<Term> atoms{p("a"), p("b"), p("k"), p("s")};
  std::vector<Term> leaves = atoms;
  fvsat::ConstraintSystem C;
  std::vector<Term> E;
  std::size_t n = 1 + gen.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t add = i == 0 ? 1 + gen.below(3) : gen.below(2);
    for (std::size_t j = 0; j < add; ++j) E.push_back(gen.term(gen.coin(0.7) ? build : any, leaves, 2));
    Term goal = p("V" + std::to_string(i + 1));
    C.constraints.push_back(fvsat::Constraint{fvsat::make_knowledge(E), goal});
    if (gen.coin(0.6)) C.equations.emplace_back(goal, gen.term(build, leaves, 2));
    leaves.push_back(goal);
  }
  return C;
}

// Prints a group of terms with shared canonical uppercase variable names.
inline std::vector<std::string> show(const std::vector<fvsat::Term>& ts) {
  auto names = fvsat::canonical_var_names(ts);
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(fvsat::to_string(t, names));
  return out;
}

// Random bundle: symbols with random arities and precedence, rewrite rules
// whose rhs is a strict subterm of the lhs (so they are LPO-oriented),
// constructor rules for some symbols and a few arbitrary saturated rules.
inline fvsat::TheoryBundle random_bundle(oracle::Gen& gen, int index) {
  std::string text = "theory random" + std::to_string(index) + "\nsignature\n";
  std::vector<std::pair<std::string, std::size_t>> syms;
  std::size_t n = 2 + gen.below(4);
  for (std::size_t i = 0; i < n; ++i) {
    syms.emplace_back("op" + std::to_string(i), i == 0 ? 0 : 1 + gen.below(3));
    text += "  " + syms.back().first + "/" + std::to_string(syms.back().second) + "\n";
  }
  if (gen.coin()) text += "constants c0 c1\n";
  std::vector<std::string> order;
  for (const auto& s : syms) order.push_back(s.first);
  std::shuffle(order.begin(), order.end(), gen.rng);
  text += "precedence ";
  for (std::size_t i = 0; i < order.size(); ++i) text += (i ? " > " : "") + order[i];
  text += "\n";
  fvsat::TheoryBundle tmp = fvsat::parse_theory(text);
  std::map<std::string, fvsat::VarId> vars;
  std::vector<fvsat::Term> leaves{fvsat::parse_term("X", tmp.sig, vars),
                                  fvsat::parse_term("Y", tmp.sig, vars),
                                  fvsat::parse_term("op0", tmp.sig, vars)};
  text += "rules\n";
  for (std::size_t i = 0, m = gen.below(3); i < m; ++i) {
    fvsat::Term lhs = gen.term(syms, leaves, 3);
    if (lhs.is_var() || lhs.arity() == 0) continue;
    auto subs = fvsat::subterms(lhs, true);
    fvsat::Term rhs = *std::next(subs.begin(), gen.below(subs.size()));
    auto shown = show({lhs, rhs});
    text += "  " + shown[0] + " -> " + shown[1] + "\n";
  }
  text += "deduction\n";
  for (const auto& [name, arity] : syms) {
    if (!gen.coin(0.7)) continue;
    std::string args;
    for (std::size_t k = 0; k < arity; ++k) args += (k ? ", X" : "X") + std::to_string(k);
    text += "  " + args + " => " + name + (arity ? "(" + args + ")" : "") + "\n";
  }
  text += "saturated\n";
  for (std::size_t i = 0, m = gen.below(3); i < m; ++i) {
    fvsat::Term a = gen.term(syms, leaves, 2), b = gen.term(syms, leaves, 2);
    if (a.is_var() && b.is_var()) continue;
    auto subs = fvsat::subterms(a);
    fvsat::Term rhs = *std::next(subs.begin(), gen.below(subs.size()));
    auto shown = show({a, b, rhs});
    text += "  " + shown[0] + ", " + shown[1] + " => " + shown[2] + "\n";
  }
  return fvsat::parse_theory(text);
}

}  // namespace testing_support
