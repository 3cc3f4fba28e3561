#include <doctest.h>

#include "fvsat/constraints.hpp"
#include "fvsat/saturate.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fvsat;
using testing_support::Parser;

namespace {

Constraint con(Parser& p, const std::string& knowledge, const std::string& goal) {
  auto ts = p.set(knowledge);
  return Constraint{make_knowledge({ts.begin(), ts.end()}), p(goal)};
}

SolverRules saturated(const TheoryBundle& b) {
  if (!b.saturated.empty()) return SolverRules::from(b.saturated, b.sig);
  return SolverRules::from(saturate(b.L0, b.R, b.sig));
}

SolverRules only(Parser& p, const std::vector<std::string>& texts) {
  std::vector<DeductionRule> rs;
  for (const auto& t : texts) {
    p.vars.clear();
    rs.push_back(p.rule(t));
  }
  p.vars.clear();
  return SolverRules::from(rs, p.theory.sig);
}

bool has_result(const std::vector<Step>& steps, const ConstraintSystem& want) {
  for (const auto& s : steps)
    if (canonical_key(s.result) == canonical_key(want)) return true;
  return false;
}

}  // namespace

TEST_CASE("well-formedness") {
  Parser p("dy");
  ConstraintSystem ok{{con(p, "a", "V1"), con(p, "a, V1", "V2")}, {}};
  CHECK_FALSE(check_wellformed(ok));
  ConstraintSystem early{{con(p, "a, V2", "V1"), con(p, "a, V1", "V2")}, {}};
  CHECK(check_wellformed(early));
  ConstraintSystem shrink{{con(p, "a, b", "V1"), con(p, "a", "V2")}, {}};
  CHECK(check_wellformed(shrink));
}

TEST_CASE("prepare") {
  auto dy = builtin("dy");
  Parser p(dy);
  ConstraintSystem C0{{con(p, "encs(s,k), k", "V")}, {{p("V"), p("s")}}};
  auto branches = prepare(C0, dy.R);
  ConstraintSystem want{{con(p, "encs(s,k), k", "s")}, {}};
  bool found = false;
  for (const auto& b : branches)
    if (b.theta.empty() && canonical_key(b.system) == canonical_key(want)) {
      found = true;
      CHECK(*b.mu.lookup(p.var("V")) == p("s"));
    }
  CHECK(found);

  ConstraintSystem ground{{con(p, "fst(pair(a,b)), k", "V")}, {}};
  auto gb = prepare(ground, dy.R);
  REQUIRE_FALSE(gb.empty());
  ConstraintSystem normal{{con(p, "a, k", "V")}, {}};
  bool identity = false;
  for (const auto& b : gb)
    if (b.theta.empty() && canonical_key(b.system) == canonical_key(normal)) identity = true;
  CHECK(identity);

  // Knowledge with a variable not introduced earlier: prepare still applies.
  ConstraintSystem proj{{con(p, "fst(X)", "V")}, {{p("V"), p("a")}}};
  ConstraintSystem proj_want{{con(p, "Y", "a")}, {}};
  bool pair_branch = false;
  for (const auto& b : prepare(proj, dy.R)) {
    Term x = fvsat::apply(p("X"), b.theta);
    if (x.is_app() && x.sym() == intern("pair") &&
        canonical_key(b.system) == canonical_key(proj_want))
      pair_branch = true;
  }
  CHECK(pair_branch);
}

TEST_CASE("unif") {
  Parser p("dy");
  ConstraintSystem a{{con(p, "a", "a")}, {}};
  CHECK(has_result(apply_unif(a, 0), ConstraintSystem{}));
  ConstraintSystem fa{{con(p, "fst(a)", "fst(a)")}, {}};
  CHECK(has_result(apply_unif(fa, 0), ConstraintSystem{}));
  ConstraintSystem c{{con(p, "pair(a,b), c", "c")}, {}};
  auto steps = apply_unif(c, 0);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].result.constraints.empty());
}

TEST_CASE("reduce with an increasing rule") {
  Parser p("dy");
  auto L = only(p, {"X, Y => pair(X,Y)", "X, Y => encs(X,Y)"});
  ConstraintSystem C{{con(p, "a, b", "pair(a,b)")}, {}};
  ConstraintSystem want{{con(p, "a, b", "a"), con(p, "a, b", "b")}, {}};
  CHECK(has_result(apply_reduce1(C, 0, L), want));

  ConstraintSystem D{{con(p, "a", "encs(a,a)")}, {}};
  ConstraintSystem dwant{{con(p, "a", "a")}, {}};
  auto dsteps = apply_reduce1(D, 0, L);
  REQUIRE(dsteps.size() == 1);
  // Both argument constraints become {a} |> a and are merged.
  CHECK(canonical_key(dsteps[0].result) == canonical_key(dwant));

  auto encs_only = only(p, {"X, Y => encs(X,Y)"});
  CHECK(apply_reduce1(C, 0, encs_only).empty());
}

TEST_CASE("reduce with a decreasing rule") {
  Parser p("dy");
  auto L = only(p, {"encs(X,Y), Y => X"});
  ConstraintSystem C{{con(p, "encs(s,k), k", "pair(s,s)")}, {}};
  ConstraintSystem want{{con(p, "encs(s,k), k", "k"), con(p, "encs(s,k), k, s", "pair(s,s)")}, {}};
  auto steps = apply_reduce2(C, 0, L);
  REQUIRE(steps.size() == 1);
  CHECK(canonical_key(steps[0].result) == canonical_key(want));

  ConstraintSystem none{{con(p, "pair(s,k)", "s")}, {}};
  CHECK(apply_reduce2(none, 0, L).empty());

  Parser bs("blind");
  auto seven = only(bs, {"sig(bl(X,Y),sk(Z)), Y => sig(X,sk(Z))"});
  ConstraintSystem B{{con(bs, "sig(bl(m,b),sk(k)), b", "sig(m,sk(k))")}, {}};
  auto bsteps = apply_reduce2(B, 0, seven);
  REQUIRE(bsteps.size() == 1);
  const auto& last = bsteps[0].result.constraints.back();
  CHECK(std::count(last.knowledge.begin(), last.knowledge.end(), last.goal) == 1);
  CHECK(has_result(apply_unif(bsteps[0].result, bsteps[0].result.constraints.size() - 1),
                   ConstraintSystem{{con(bs, "sig(bl(m,b),sk(k)), b", "b")}, {}}));
}

TEST_CASE("solve end to end") {
  auto dy = builtin("dy");
  Parser p(dy);
  auto L = saturated(dy);

  ConstraintSystem sat{{con(p, "encs(s,k), k", "V")}, {{p("V"), p("s")}}};
  auto r1 = solve_system(sat, dy.R, L);
  CHECK(r1.status == SolveStatus::Sat);
  CHECK(*r1.witness.lookup(p.var("V")) == p("s"));
  CHECK(verify_witness(sat, r1.witness, L, dy.R));
  CHECK(r1.stats.accounting_violations == 0);
  CHECK(r1.stats.wellformed_violations == 0);

  ConstraintSystem fail{{con(p, "encs(s,k)", "V")}, {{p("V"), p("s")}}};
  auto r2 = solve_system(fail, dy.R, L);
  CHECK(r2.status == SolveStatus::Fail);

  ConstraintSystem solved{{con(p, "a", "V"), con(p, "a, V", "W")}, {}};
  auto r3 = solve(solved, L);
  CHECK(r3.status == SolveStatus::Sat);
  CHECK(r3.stats.steps == 0);

  // Needs the decrypted key first: knows encs(k2,k1), k1, encs(s,k2).
  ConstraintSystem chain{{con(p, "encs(k2,k1), k1, encs(s,k2)", "V")}, {{p("V"), p("pair(s,k2)")}}};
  CHECK(solve_system(chain, dy.R, L).status == SolveStatus::Sat);

  // Ground constraints are decided without search, so this one keeps V open.
  ConstraintSystem budget{
      {con(p, "encs(k2,k1), k1, encs(s,k2)", "V"), con(p, "encs(k2,k1), k1, encs(s,k2), V", "pair(s,V)")},
      {}};
  SolveOptions tiny;
  tiny.node_budget = 1;
  CHECK(solve(budget, L, tiny).status == SolveStatus::Unknown);
}

TEST_CASE("implied constraints do not blow up the search") {
  auto dy = builtin("dy");
  Parser p(dy);
  auto L = saturated(dy);
  const std::string E = "enca(a,enca(k,s)), encs(sk(a),b), pair(enca(s,a),encs(b,a))";
  ConstraintSystem C{{con(p, E, "V1"), con(p, E + ", encs(V1,enca(a,V1))", "V2")},
                     {{p("V2"), p("encs(s,pair(a,k))")}}};
  auto r = solve_system(C, dy.R, L);
  CHECK(r.status == SolveStatus::Fail);
  CHECK(r.stats.implied_dropped > 0);
  CHECK(r.stats.nodes < kDefaultNodeBudget);
}

TEST_CASE("ground decision") {
  auto dy = builtin("dy");
  Parser p(dy);
  auto L = saturated(dy);
  ConstraintSystem val{{con(p, "encs(s,k), k", "s")}, {}};
  auto g = decide_ground(val, L);
  CHECK(g.valid);
  REQUIRE(g.derivations.size() == 1);
  CHECK(replay_derivation(val.constraints[0].knowledge, p("s"), g.derivations[0], L.all()));
  ConstraintSystem inval{{con(p, "encs(s,k)", "s")}, {}};
  CHECK_FALSE(decide_ground(inval, L).valid);

  auto bs = builtin("blind");
  Parser q(bs);
  auto Lb = saturated(bs);
  ConstraintSystem bval{{con(q, "sig(bl(m,b),sk(k)), b", "sig(m,sk(k))")}, {}};
  CHECK(decide_ground(bval, Lb).valid);
  CHECK_THROWS_AS(decide_ground(ConstraintSystem{{con(p, "a", "V")}, {}}, L), std::invalid_argument);
}

TEST_CASE("ground derivation of a constant also reachable by a decreasing rule") {
  auto ds = builtin("dsks");
  Parser p(ds);
  auto L = saturated(ds);
  ConstraintSystem G{{con(p, "a, pkp(1,0), skp(0,0)", "1")}, {}};
  auto g = decide_ground(G, L);
  REQUIRE(g.valid);
  CHECK(replay_derivation(G.constraints[0].knowledge, p("1"), g.derivations.at(0), L.all()));
}

TEST_CASE("bounded oracle closure") {
  auto dy = builtin("dy");
  Parser p(dy);
  DeductionSystem L0{dy.L0, DeductionMode::ModuloTheory};
  auto one = oracle_closure(p.set("a, b"), L0, 1, &dy.R);
  for (const auto& t : p.set("pair(a,b), encs(a,b), encs(b,a), a, b")) CHECK(one.count(t));
  CHECK(oracle_closure(p.set("a, b"), L0, 0, &dy.R) == p.set("a, b"));
  DeductionSystem Lsat{saturate(dy.L0, dy.R, dy.sig).plain_rules(), DeductionMode::EmptyTheory};
  CHECK(oracle_closure(p.set("encs(s,k), k"), Lsat, 1).count(p("s")));
  CHECK_THROWS(oracle_closure(p.set("a"), L0, 1));

  // Matches the independent closure on small inputs, in both modes.
  auto ref = oracle::closure(p.set("encs(s,k), k"), dy.L0, 2, &dy.R, [](const Term&) { return true; });
  CHECK(oracle_closure(p.set("encs(s,k), k"), L0, 2, &dy.R) == ref);
  auto ref_sat = oracle::closure(p.set("encs(s,k), k"), Lsat.rules, 2, nullptr,
                                 [](const Term&) { return true; });
  CHECK(oracle_closure(p.set("encs(s,k), k"), Lsat, 2) == ref_sat);
}

TEST_CASE("ground decision agrees with bounded closure on random instances") {
  for (const auto& name : builtin_names()) {
    auto b = builtin(name);
    Parser p(b);
    SolverRules L = saturated(b);
    DeductionSystem Lsys{L.all(), DeductionMode::EmptyTheory};
    oracle::Gen gen(name.size() * 31);
    auto syms = oracle::symbols_of(b.sig);
    std::vector<Term> leaves{p("a"), p("b"), p("k")};
    int valid = 0;
    for (int i = 0; i < 40; ++i) {
      std::vector<Term> E;
      std::size_t n = 1 + gen.below(3);
      for (std::size_t j = 0; j < n; ++j) E.push_back(normalize(gen.term(syms, leaves, 3), b.R));
      Term goal = gen.coin() ? *std::next(subterms(TermSet(E.begin(), E.end())).begin(),
                                          gen.below(subterms(TermSet(E.begin(), E.end())).size()))
                             : normalize(gen.term(syms, leaves, 2), b.R);
      ConstraintSystem G{{Constraint{make_knowledge(E), goal}}, {}};
      auto res = decide_ground(G, L);
      OracleOptions focus;
      focus.focus = TermSet{goal};
      bool found = oracle_closure(TermSet(E.begin(), E.end()), Lsys, 3, nullptr, focus).count(goal) > 0;
      if (found) CHECK(res.valid);
      if (res.valid) {
        ++valid;
        CHECK(replay_derivation(G.constraints[0].knowledge, goal, res.derivations[0], L.all()));
      }
    }
    CHECK(valid > 0);
  }
}
