#include <doctest.h>

#include "fvsat/unify.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fvsat;
using testing_support::Parser;

namespace {

bool unifies(const Substitution& s, const std::vector<Equation>& eqs) {
  for (const auto& [a, b] : eqs)
    if (fvsat::apply(a, s) != fvsat::apply(b, s)) return false;
  return true;
}

}  // namespace

TEST_CASE("mgu basics") {
  Parser p(testing_support::small_theory());
  auto r1 = mgu(p("X"), p("a"));
  REQUIRE(r1);
  CHECK(*r1.mgu->lookup(p.var("X")) == p("a"));
  CHECK(r1.mgu->size() == 1);

  auto r2 = mgu(p("f(X,b)"), p("f(a,Y)"));
  REQUIRE(r2);
  CHECK(*r2.mgu->lookup(p.var("X")) == p("a"));
  CHECK(*r2.mgu->lookup(p.var("Y")) == p("b"));

  auto r3 = mgu(p("X"), p("g(X)"));
  CHECK_FALSE(r3);
  CHECK(r3.failure == UnifyFailure::Occurs);

  auto r4 = mgu(p("g(X)"), p("h(X)"));
  CHECK_FALSE(r4);
  CHECK(r4.failure == UnifyFailure::Clash);
}

TEST_CASE("mgu is idempotent") {
  Parser p(testing_support::small_theory());
  auto r = mgu({{p("f(X,Y)"), p("f(Y,g(Z))")}, {p("Z"), p("a")}});
  REQUIRE(r);
  for (const auto& [v, t] : r.mgu->map()) CHECK(fvsat::apply(t, *r.mgu) == t);
  CHECK(unifies(*r.mgu, {{p("f(X,Y)"), p("f(Y,g(Z))")}, {p("Z"), p("a")}}));
}

TEST_CASE("match") {
  Parser dy("dy");
  auto m = match(dy("encs(X,Y)"), dy("encs(s,k)"));
  REQUIRE(m);
  CHECK(*m->lookup(dy.var("X")) == dy("s"));
  CHECK(*m->lookup(dy.var("Y")) == dy("k"));

  Parser p(testing_support::small_theory());
  auto m2 = match(p("X"), p("g(a)"));
  REQUIRE(m2);
  CHECK(*m2->lookup(p.var("X")) == p("g(a)"));
  CHECK_FALSE(match(p("f(X,X)"), p("f(a,b)")));
  // A pattern variable that must stay itself.
  CHECK_FALSE(match(p("f(X,X)"), p("f(X,a)")));
  CHECK(is_instance(p("f(a,a)"), p("f(X,X)")));
  CHECK(variant_of(p("f(X,Y)"), p("f(Y,Z)")));
  CHECK_FALSE(variant_of(p("f(X,X)"), p("f(Y,Z)")));
}

TEST_CASE("mgu agrees with an independent unification algorithm") {
  Parser p(testing_support::small_theory());
  oracle::Gen gen(11);
  auto syms = oracle::symbols_of(p.theory.sig);
  std::vector<Term> leaves{p("X"), p("Y"), p("Z"), p("a"), p("b")};
  int solvable = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<Equation> eqs;
    std::vector<std::pair<Term, Term>> raw;
    std::size_t n = 1 + gen.below(2);
    for (std::size_t k = 0; k < n; ++k) {
      Term a = gen.term(syms, leaves, 3), b = gen.term(syms, leaves, 3);
      eqs.emplace_back(a, b);
      raw.emplace_back(a, b);
    }
    auto mine = mgu(eqs);
    auto ref = oracle::unify(raw);
    CHECK(bool(mine) == ref.has_value());
    if (!mine || !ref) continue;
    ++solvable;
    CHECK(unifies(*mine.mgu, eqs));
    // Each is an instance of the other on the equation terms.
    std::vector<Term> lhs, rhs;
    for (const auto& [a, b] : eqs) {
      lhs.push_back(fvsat::apply(a, *mine.mgu));
      rhs.push_back(oracle::subst(a, *ref));
    }
    CHECK(variant_of(Term::app("$t", lhs), Term::app("$t", rhs)));
    // Reordering equations gives the same result up to renaming.
    std::vector<Equation> rev(eqs.rbegin(), eqs.rend());
    auto back = mgu(rev);
    REQUIRE(back);
    std::vector<Term> lhs2;
    for (const auto& [a, b] : eqs) lhs2.push_back(fvsat::apply(a, *back.mgu));
    CHECK(variant_of(Term::app("$t", lhs), Term::app("$t", lhs2)));
  }
  CHECK(solvable > 50);
}
