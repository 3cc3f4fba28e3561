#include "fvsat/unify.hpp"

namespace fvsat {

namespace {

// Follows variable bindings in a triangular substitution.
Term walk(const Term& t, const std::map<VarId, Term>& b) {
  Term cur = t;
  while (cur.is_var()) {
    auto it = b.find(cur.var_id());
    if (it == b.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs_walk(VarId v, const Term& t, const std::map<VarId, Term>& b) {
  Term w = walk(t, b);
  if (w.is_var()) return w.var_id() == v;
  if (w.ground()) return false;
  for (const auto& a : w.args())
    if (occurs_walk(v, a, b)) return true;
  return false;
}

Term resolve(const Term& t, const std::map<VarId, Term>& b) {
  Term w = walk(t, b);
  if (w.is_var() || w.ground()) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  for (const auto& a : w.args()) args.push_back(resolve(a, b));
  return Term::app(w.sym(), std::move(args));
}

}  // namespace

UnifyResult mgu(const std::vector<Equation>& eqs) {
  std::map<VarId, Term> b;
  std::vector<Equation> work(eqs.rbegin(), eqs.rend());
  while (!work.empty()) {
    auto [l, r] = work.back();
    work.pop_back();
    Term s = walk(l, b);
    Term t = walk(r, b);
    if (s == t) continue;
    if (s.is_var() && t.is_var()) {
      if (s.var_id() > t.var_id())
        b[s.var_id()] = t;
      else
        b[t.var_id()] = s;
      continue;
    }
    if (t.is_var()) std::swap(s, t);
    if (s.is_var()) {
      if (occurs_walk(s.var_id(), t, b)) {
        return UnifyResult{std::nullopt, UnifyFailure::Occurs};
      }
      b[s.var_id()] = t;
      continue;
    }
    if (s.sym() != t.sym() || s.arity() != t.arity())
      return UnifyResult{std::nullopt, UnifyFailure::Clash};
    for (std::size_t i = s.arity(); i-- > 0;) work.emplace_back(s.arg(i), t.arg(i));
  }
  Substitution sigma;
  for (const auto& [v, t] : b) sigma.bind(v, resolve(t, b));
  return UnifyResult{std::move(sigma), UnifyFailure::None};
}

UnifyResult mgu(const Term& s, const Term& t) { return mgu(std::vector<Equation>{{s, t}}); }

bool match_into(const Term& pattern, const Term& subject, Bindings& m) {
  if (pattern.is_var()) {
    auto [it, inserted] = m.emplace(pattern.var_id(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var()) return false;
  if (pattern.sym() != subject.sym() || pattern.arity() != subject.arity()) return false;
  if (pattern.ground()) return pattern == subject;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.arg(i), subject.arg(i), m)) return false;
  return true;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Bindings m;
  if (!match_into(pattern, subject, m)) return std::nullopt;
  return Substitution(std::move(m));
}

bool is_instance(const Term& subject, const Term& pattern) {
  return match(pattern, subject).has_value();
}

bool variant_of(const Term& a, const Term& b) {
  return renaming_key({a}) == renaming_key({b});
}

}  // namespace fvsat
