#include <doctest.h>

#include "fvsat/signature.hpp"
#include "fvsat/term.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fvsat;
using testing_support::Parser;

TEST_CASE("subterms") {
  Parser p(testing_support::small_theory());
  CHECK(subterms(p("a"), false) == TermSet{p("a")});
  CHECK(subterms(p("f(X,a)"), true) == TermSet{p("X"), p("a")});

  Parser dy("dy");
  // Argument closure enumerated by hand, checked against a recursive walk.
  TermSet expected = dy.set("pair(encs(s,k),k), encs(s,k), s, k");
  CHECK(subterms(dy("pair(encs(s,k),k)"), false) == expected);
  TermSet walked;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    walked.insert(t);
    if (t.is_app())
      for (const auto& a : t.args()) walk(a);
  };
  walk(dy("pair(encs(s,k),k)"));
  CHECK(walked == expected);
}

TEST_CASE("apply") {
  Parser p(testing_support::small_theory());
  Substitution s;
  s.bind(p.var("X"), p("a"));
  CHECK(fvsat::apply(p("X"), s) == p("a"));
  CHECK(fvsat::apply(p("a"), s) == p("a"));
  Substitution g;
  g.bind(p.var("X"), p("g(Y)"));
  CHECK(fvsat::apply(p("f(X,Y)"), g) == p("f(g(Y),Y)"));
  CHECK(fvsat::apply(p("f(X,Y)"), Substitution{}) == p("f(X,Y)"));
}

TEST_CASE("identity bindings are not stored") {
  Parser p(testing_support::small_theory());
  Substitution s;
  s.bind(p.var("X"), p("X"));
  CHECK(s.empty());
}

TEST_CASE("compose") {
  Parser p(testing_support::small_theory());
  Substitution xy, ya;
  xy.bind(p.var("X"), p("Y"));
  ya.bind(p.var("Y"), p("a"));
  Substitution c = compose(xy, ya);
  CHECK(*c.lookup(p.var("X")) == p("a"));
  CHECK(*c.lookup(p.var("Y")) == p("a"));
  CHECK(compose(Substitution{}, ya) == ya);

  Substitution xf, yb;
  xf.bind(p.var("X"), p("g(Y)"));
  yb.bind(p.var("Y"), p("b"));
  Substitution d = compose(xf, yb);
  CHECK(fvsat::apply(p("X"), d) == p("g(b)"));
  CHECK(fvsat::apply(p("Y"), d) == p("b"));
}

TEST_CASE("count_vars") {
  Parser p(testing_support::small_theory());
  CHECK(count_vars({p("f(X,X)")}) == 1);
  CHECK(count_vars({p("a")}) == 0);
  CHECK(count_vars({p("f(X,Y)"), p("g(Z)")}) == 3);
}

TEST_CASE("positions and replacement") {
  Parser p(testing_support::small_theory());
  Term t = p("f(g(X),a)");
  CHECK(positions(t).size() == 4);
  CHECK(positions(t, true).size() == 3);
  CHECK(at(t, {0, 0}) == p("X"));
  CHECK(replace_at(t, {1}, p("b")) == p("f(g(X),b)"));
  CHECK(is_prefix({0}, {0, 0}));
  CHECK_FALSE(is_prefix({1}, {0, 0}));
}

TEST_CASE("renaming keys identify terms up to variable names") {
  Parser p(testing_support::small_theory());
  CHECK(renaming_key({p("f(X,Y)")}) == renaming_key({p("f(Z,U)")}));
  CHECK(renaming_key({p("f(X,X)")}) != renaming_key({p("f(X,Y)")}));
  CHECK(to_string(p("f(Y,g(X))"), canonical_var_names({p("f(Y,g(X))")})) == "f(X,g(Y))");
}

TEST_CASE("fresh variables are distinct") {
  CHECK(fresh_var() != fresh_var());
}

TEST_CASE("signature declarations") {
  Signature sig;
  sig.declare("f", 2);
  sig.declare("g", 1);
  CHECK_THROWS_AS(sig.declare("f", 1), std::invalid_argument);
  sig.declare_free_constant("c");
  CHECK(sig.rank(intern("f")) < sig.rank(intern("g")));
  CHECK(sig.rank(intern("g")) < sig.rank(intern("c")));
  sig.set_precedence({intern("g"), intern("f")});
  CHECK(sig.rank(intern("g")) < sig.rank(intern("f")));
  CHECK_THROWS(sig.rank(intern("undeclared_symbol")));
  CHECK_THROWS(sig.check_term(Term::app("f", {Term::app("c")})));
}

TEST_CASE("term properties on random terms") {
  Parser p(testing_support::small_theory());
  oracle::Gen gen(7);
  auto syms = oracle::symbols_of(p.theory.sig);
  std::vector<Term> leaves{p("X"), p("Y"), p("Z"), p("a"), p("b")};
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term(syms, leaves, 4);
    Substitution r, s, u;
    r.bind(p.var("X"), gen.term(syms, leaves, 2));
    s.bind(p.var("Y"), gen.term(syms, leaves, 2));
    u.bind(p.var("Z"), gen.term(syms, leaves, 2));
    // associativity of composition
    CHECK(fvsat::apply(t, compose(compose(r, s), u)) == fvsat::apply(t, compose(r, compose(s, u))));
    // composition agrees with sequential application
    CHECK(fvsat::apply(t, compose(r, s)) == fvsat::apply(fvsat::apply(t, r), s));
    // subterm monotonicity
    for (const auto& q : subterms(t)) {
      auto inner = subterms(q);
      CHECK(std::includes(subterms(t).begin(), subterms(t).end(), inner.begin(), inner.end()));
    }
    // Var(tσ) is the union of Var(xσ)
    VarSet expect;
    for (auto v : vars(t)) collect_vars(fvsat::apply(Term::var(v), r), expect);
    CHECK(vars(fvsat::apply(t, r)) == expect);
  }
}
