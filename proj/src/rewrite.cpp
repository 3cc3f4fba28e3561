#include "fvsat/rewrite.hpp"

#include "fvsat/ordering.hpp"
#include "fvsat/unify.hpp"

namespace fvsat {

namespace {

// Rewrites at the root once, if some rule matches.
bool root_step(const Term& t, const RewriteSystem& R, Term& out) {
  if (t.is_var()) return false;
  for (const auto& r : R.rules) {
    if (r.lhs.sym() != t.sym()) continue;
    if (auto m = match(r.lhs, t)) {
      out = fvsat::apply(r.rhs, *m);
      return true;
    }
  }
  return false;
}

struct Budget {
  std::size_t left;
  void spend() {
    if (left == 0) throw DivergenceError("rewrite step budget exhausted");
    --left;
  }
};

Term innermost(const Term& t, const RewriteSystem& R, Budget& b) {
  if (t.is_var()) return t;
  Term cur = t;
  for (;;) {
    std::vector<Term> args;
    args.reserve(cur.arity());
    bool changed = false;
    for (const auto& a : cur.args()) {
      args.push_back(innermost(a, R, b));
      changed = changed || !args.back().same_node(a);
    }
    if (changed) cur = Term::app(cur.sym(), std::move(args));
    Term next;
    if (!root_step(cur, R, next)) return cur;
    b.spend();
    if (next.is_var()) return next;
    cur = next;
  }
}

// One leftmost-outermost step; false when `t` is normal.
bool outer_step(const Term& t, const RewriteSystem& R, Term& out) {
  if (t.is_var()) return false;
  if (root_step(t, R, out)) return true;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    Term sub;
    if (outer_step(t.arg(i), R, sub)) {
      std::vector<Term> args = t.args();
      args[i] = sub;
      out = Term::app(t.sym(), std::move(args));
      return true;
    }
  }
  return false;
}

}  // namespace

Term normalize(const Term& t, const RewriteSystem& R, std::size_t step_budget, Strategy strategy) {
  Budget b{step_budget};
  if (strategy == Strategy::LeftmostInnermost) return innermost(t, R, b);
  Term cur = t, next;
  while (outer_step(cur, R, next)) {
    b.spend();
    cur = next;
  }
  return cur;
}

bool is_normal(const Term& t, const RewriteSystem& R) {
  Term dummy;
  if (t.is_var()) return true;
  if (root_step(t, R, dummy)) return false;
  for (const auto& a : t.args())
    if (!is_normal(a, R)) return false;
  return true;
}

bool eq_mod_H(const Term& s, const Term& t, const RewriteSystem& R) {
  return normalize(s, R) == normalize(t, R);
}

bool check_lpo_oriented(const RewriteSystem& R, const Signature& sig) {
  for (const auto& r : R.rules)
    if (!lpo_greater(r.lhs, r.rhs, sig)) return false;
  return true;
}

std::vector<CriticalPair> critical_pairs(const RewriteSystem& R) {
  std::vector<CriticalPair> out;
  for (std::size_t i = 0; i < R.rules.size(); ++i) {
    for (std::size_t j = 0; j < R.rules.size(); ++j) {
      Substitution ri = renaming_for(vars(R.rules[i].lhs));
      Substitution rj = renaming_for(vars(R.rules[j].lhs));
      Term l1 = fvsat::apply(R.rules[i].lhs, ri), r1 = fvsat::apply(R.rules[i].rhs, ri);
      Term l2 = fvsat::apply(R.rules[j].lhs, rj), r2 = fvsat::apply(R.rules[j].rhs, rj);
      for (const auto& p : positions(l1, true)) {
        if (p.empty() && i == j) continue;
        auto u = mgu(at(l1, p), l2);
        if (!u) continue;
        Term left = fvsat::apply(replace_at(l1, p, r2), *u.mgu);
        Term right = fvsat::apply(r1, *u.mgu);
        out.push_back(CriticalPair{i, j, p, left, right});
      }
    }
  }
  return out;
}

bool critical_pairs_joinable(const RewriteSystem& R, std::size_t step_budget) {
  for (const auto& cp : critical_pairs(R))
    if (normalize(cp.left, R, step_budget) != normalize(cp.right, R, step_budget)) return false;
  return true;
}

bool check_subterm_convergent(const RewriteSystem& R) {
  for (const auto& r : R.rules)
    if (!subterms(r.lhs, true).count(r.rhs)) return false;
  return true;
}

std::string to_string(const RewriteRule& r) {
  auto names = canonical_var_names({r.lhs, r.rhs});
  return to_string(r.lhs, names) + " -> " + to_string(r.rhs, names);
}

}  // namespace fvsat
