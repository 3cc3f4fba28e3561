#include <doctest.h>

#include "fvsat/ordering.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fvsat;
using testing_support::Parser;

namespace {

std::map<SymId, std::size_t> ranks(const Signature& sig) {
  std::map<SymId, std::size_t> out;
  for (auto f : sig.functions()) out[f] = sig.rank(f);
  for (auto c : sig.free_constants()) out[c] = sig.rank(c);
  return out;
}

}  // namespace

TEST_CASE("lpo examples") {
  Parser p(testing_support::small_theory());
  CHECK(lpo_compare(p("g(a)"), p("a"), p.theory.sig) == OrderResult::Greater);
  CHECK(lpo_compare(p("a"), p("g(a)"), p.theory.sig) == OrderResult::Less);
  CHECK(lpo_compare(p("X"), p("X"), p.theory.sig) == OrderResult::Equal);
  CHECK(lpo_compare(p("X"), p("Y"), p.theory.sig) == OrderResult::Incomparable);
  CHECK(lpo_compare(p("f(X,Y)"), p("g(X)"), p.theory.sig) == OrderResult::Greater);
  CHECK(lpo_compare(p("g(X)"), p("h(Y)"), p.theory.sig) == OrderResult::Incomparable);
  CHECK_THROWS(lpo_compare(p("a"), Term::app("never_declared"), p.theory.sig));
}

TEST_CASE("free constants rank below function symbols") {
  Parser p(testing_support::small_theory());
  p.theory.sig.declare_free_constant("n");
  CHECK(lpo_greater(p("c"), Term::app("n"), p.theory.sig));
}

TEST_CASE("classify") {
  Parser dy("dy");
  CHECK(classify(dy.rule("X, Y => encs(X,Y)"), dy.theory.sig) == RuleKind::Increasing);
  CHECK(classify(dy.rule("encs(X,Y), Y => X"), dy.theory.sig) == RuleKind::Decreasing);
  CHECK(classify(dy.rule("pair(X,Y) => X"), dy.theory.sig) == RuleKind::Decreasing);
  CHECK(classify(dy.rule("X, pk(Y), sk(Y) => X"), dy.theory.sig) == RuleKind::Decreasing);
}

TEST_CASE("lpo agrees with the definition and satisfies the order laws") {
  Parser p(testing_support::small_theory());
  const Signature& sig = p.theory.sig;
  auto rank = ranks(sig);
  oracle::Gen gen(3);
  auto syms = oracle::symbols_of(sig);
  std::vector<Term> leaves{p("X"), p("Y"), p("a"), p("b"), p("c")};
  std::vector<Term> ground_leaves{p("a"), p("b"), p("c")};
  for (int i = 0; i < 1000; ++i) {
    Term s = gen.term(syms, leaves, 3), t = gen.term(syms, leaves, 3);
    bool gt = lpo_greater(s, t, sig);
    CHECK(gt == oracle::lpo_gt(s, t, rank));
    if (gt) {
      CHECK(lpo_compare(t, s, sig) == OrderResult::Less);
      Substitution sigma;
      sigma.bind(p.var("X"), gen.term(syms, leaves, 2));
      CHECK(lpo_greater(fvsat::apply(s, sigma), fvsat::apply(t, sigma), sig));
      CHECK(lpo_greater(Term::app("f", {s, p("a")}), Term::app("f", {t, p("a")}), sig));
      CHECK(lpo_greater(Term::app("g", {s}), Term::app("g", {t}), sig));
    }
    Term gs = gen.term(syms, ground_leaves, 3), gt2 = gen.term(syms, ground_leaves, 3);
    if (gs != gt2) {
      auto r = lpo_compare(gs, gt2, sig);
      CHECK((r == OrderResult::Greater || r == OrderResult::Less));
    }
  }
}

TEST_CASE("properties of terms below another") {
  Parser p(testing_support::small_theory());
  const Signature& sig = p.theory.sig;
  oracle::Gen gen(5);
  auto syms = oracle::symbols_of(sig);
  std::vector<Term> leaves{p("X"), p("Y"), p("Z"), p("a"), p("b")};
  int below = 0;
  for (int i = 0; i < 1000; ++i) {
    Term s = gen.term(syms, leaves, 3), t = gen.term(syms, leaves, 3);
    if (gen.coin(0.2)) s = *std::next(subterms(t).begin(), gen.below(subterms(t).size()));
    if (!lpo_geq(t, s, sig)) continue;
    ++below;
    auto vt = vars(t);
    for (auto v : vars(s)) CHECK(vt.count(v));
    CHECK_FALSE(subterms(s, true).count(t));
    if (t.is_var()) CHECK(s == t);
    if (s.is_app())
      for (const auto& x : {p("X"), p("Y"), p("Z")}) CHECK_FALSE(lpo_greater(x, s, sig));
  }
  CHECK(below > 100);
}
