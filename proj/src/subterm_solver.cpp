#include "fvsat/subterm_solver.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace fvsat {

SaturationResult saturate_subterm(const std::vector<DeductionRule>& L0, const RewriteSystem& R,
                                  const Signature& sig, SaturationConfig cfg) {
  if (!check_subterm_convergent(R))
    throw std::invalid_argument("rewrite system is not subterm convergent");
  cfg.delete_trivial = true;
  SaturationResult res = saturate(L0, R, sig, cfg);
  std::set<std::string> constructors;
  for (const auto& c : L0) constructors.insert(canonical_key(c));
  for (const auto& r : res.rules) {
    if (constructors.count(canonical_key(r.rule))) continue;
    bool ok = false;
    for (const auto& p : r.rule.lhs)
      if (p != r.rule.rhs && subterms(p, true).count(r.rule.rhs)) ok = true;
    if (!ok)
      throw std::logic_error("rule " + to_string(r.rule) +
                                  " does not conclude a strict subterm of a premise");
  }
  return res;
}

namespace {

struct Tagged {
  std::vector<Term> knowledge;
  Term goal;
  bool inc = false;
  std::size_t used = 0;   // decreasing-rule applications so far
  long bound = -1;        // guess bound, fixed when first selected
};

using State = std::vector<Tagged>;

State apply_state(const State& S, const Substitution& s) {
  State out;
  std::set<std::tuple<std::vector<Term>, Term, bool>> seen;
  for (const auto& c : S) {
    Tagged d = c;
    d.knowledge = make_knowledge(fvsat::apply(c.knowledge, s));
    d.goal = fvsat::apply(c.goal, s);
    if (seen.emplace(d.knowledge, d.goal, d.inc).second) out.push_back(std::move(d));
  }
  return out;
}

std::string state_key(const State& S) {
  std::vector<Term> ts;
  for (const auto& c : S) {
    std::string tag = c.inc ? "$i" : "$p" + std::to_string(c.used) + "_" + std::to_string(c.bound);
    ts.push_back(Term::app(tag, {c.goal, Term::app("$e", c.knowledge)}));
  }
  return renaming_key(ts);
}

ConstraintSystem plain(const State& S) {
  ConstraintSystem C;
  for (const auto& c : S) C.constraints.push_back(Constraint{c.knowledge, c.goal});
  return C;
}

bool is_constructor(const DeductionRule& r) {
  if (r.rhs.is_var() || r.lhs.size() != r.rhs.arity()) return false;
  for (const auto& a : r.rhs.args())
    if (!a.is_var() || !r.lhs.count(a)) return false;
  return true;
}

class SubtermSearch {
 public:
  explicit SubtermSearch(const SolverRules& L) : L_(L) {
    for (const auto& r : L.increasing)
      if (is_constructor(r)) constructors_.insert(r.rhs.sym());
  }

  bool run(const State& S, const Substitution& acc) {
    if (++stats.nodes > kSafety) throw std::runtime_error("subterm solver exceeded its safety bound");
    if (!visited_.insert(state_key(S)).second) return false;

    // Increasing-only constraints first.
    for (std::size_t i = 0; i < S.size(); ++i) {
      const auto& c = S[i];
      if (!c.inc || c.goal.is_var()) continue;
      for (const auto& e : c.knowledge) {
        if (e.is_var()) continue;
        auto u = mgu(e, c.goal);
        if (!u) continue;
        State T = S;
        T.erase(T.begin() + i);
        ++stats.steps;
        if (run(apply_state(T, *u.mgu), compose(acc, *u.mgu))) return true;
      }
      if (constructors_.count(c.goal.sym())) {
        State T(S.begin(), S.begin() + i);
        for (const auto& a : c.goal.args()) T.push_back(Tagged{c.knowledge, a, true, 0, -1});
        T.insert(T.end(), S.begin() + i + 1, S.end());
        ++stats.steps;
        if (run(apply_state(T, {}), acc)) return true;
      }
      return false;
    }

    std::size_t i = 0;
    while (i < S.size() && S[i].goal.is_var()) ++i;
    if (i == S.size()) {
      auto w = solved_form_witness(plain(S), L_.nullary);
      if (!w) return false;
      solution = compose(acc, *w);
      return true;
    }

    State base = S;
    Tagged& cur = base[i];
    if (cur.bound < 0) {
      long n = 0;
      for (const auto& s : subterms(TermSet(cur.knowledge.begin(), cur.knowledge.end())))
        if (!s.is_var()) ++n;
      cur.bound = n;
    }

    // Stop guessing: only increasing rules from here on.
    {
      State T = base;
      T[i].inc = true;
      if (run(T, acc)) return true;
    }
    if (static_cast<long>(cur.used) >= cur.bound) return false;

    for (const auto& rule : L_.decreasing) {
      DeductionRule r = rule.renamed();
      std::vector<Term> nonvar, varp;
      for (const auto& t : r.lhs) (t.is_var() ? varp : nonvar).push_back(t);
      bool found = false;
      enumerate(nonvar, cur.knowledge, 0, {}, [&](const Substitution& s) {
        if (found) return;
        Term added = fvsat::apply(r.rhs, s);
        std::vector<Term> E = make_knowledge(fvsat::apply(cur.knowledge, s));
        if (std::binary_search(E.begin(), E.end(), added)) return;
        State T(base.begin(), base.begin() + i);
        for (const auto& y : varp) T.push_back(Tagged{cur.knowledge, y, true, 0, -1});
        Tagged next = cur;
        next.knowledge.push_back(r.rhs);
        next.used = cur.used + 1;
        stats.max_guesses = std::max(stats.max_guesses, next.used);
        if (static_cast<long>(next.used) > next.bound) ++stats.guess_bound_violations;
        T.push_back(next);
        for (std::size_t j = i + 1; j < base.size(); ++j) {
          Tagged later = base[j];
          later.knowledge.push_back(r.rhs);
          T.push_back(later);
        }
        ++stats.steps;
        if (run(apply_state(T, s), compose(acc, s))) found = true;
      });
      if (found) return true;
    }
    return false;
  }

  SolveStats stats;
  Substitution solution;

 private:
  static constexpr std::size_t kSafety = 2000000;

  void enumerate(const std::vector<Term>& prem, const std::vector<Term>& E, std::size_t i,
                 std::vector<Equation> eqs, const std::function<void(const Substitution&)>& fn) {
    auto u = mgu(eqs);
    if (!u) return;
    if (i == prem.size()) {
      fn(*u.mgu);
      return;
    }
    for (const auto& e : E) {
      if (e.is_var() || e.sym() != prem[i].sym()) continue;
      eqs.emplace_back(prem[i], e);
      enumerate(prem, E, i + 1, eqs, fn);
      eqs.pop_back();
    }
  }

  const SolverRules& L_;
  std::set<SymId> constructors_;
  std::set<std::string> visited_;
};

}  // namespace

SolveResult solve_subterm(const ConstraintSystem& C_in, const SolverRules& L) {
  SolveResult res;
  ConstraintSystem C = C_in;
  Substitution pre;
  if (!C.equations.empty()) {
    auto u = mgu(C.equations);
    if (!u) return res;
    pre = *u.mgu;
    C = fvsat::apply(C, pre);
    C.equations.clear();
  }
  State S;
  for (const auto& c : C.constraints) S.push_back(Tagged{c.knowledge, c.goal, false, 0, -1});
  SubtermSearch search(L);
  bool found = search.run(S, pre);
  res.stats = search.stats;
  if (!found) return res;
  res.status = SolveStatus::Sat;
  Substitution fill;
  for (auto v : C_in.variables()) {
    Term t = fvsat::apply(Term::var(v), search.solution);
    for (auto w : vars(t)) fill.bind(w, Term::app("$w"));
    res.witness.bind(v, fvsat::apply(t, fill));
  }
  ConstraintSystem inst = fvsat::apply(C_in, res.witness);
  inst.equations.clear();
  if (!decide_ground(inst, L).valid)
    throw std::logic_error("subterm solver witness failed ground verification");
  return res;
}

SystemResult solve_system_subterm(const ConstraintSystem& C0, const RewriteSystem& R,
                                  const SolverRules& L) {
  SystemResult res;
  auto branches = prepare(C0, R);
  res.branches = branches.size();
  for (const auto& b : branches) {
    SolveResult r = solve_subterm(b.system, L);
    res.stats.merge(r.stats);
    if (r.status == SolveStatus::Sat) {
      res.status = SolveStatus::Sat;
      res.witness = lift_witness(C0, b, r.witness, R);
      if (!verify_witness(C0, res.witness, L, R))
        throw std::logic_error("witness does not satisfy the input system");
      return res;
    }
  }
  return res;
}

}  // namespace fvsat
