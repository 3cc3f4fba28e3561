#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <functional>
#include <set>

namespace oracle {

using fvsat::DeductionRule;
using fvsat::RewriteSystem;

Term subst(const Term& t, const Subst& s) {
  if (t.is_var()) {
    auto it = s.find(t.var_id());
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(subst(a, s));
  return Term::app(t.sym(), std::move(args));
}

bool match(const Term& pattern, const Term& subject, Subst& s) {
  if (pattern.is_var()) {
    auto it = s.find(pattern.var_id());
    if (it == s.end()) {
      s.emplace(pattern.var_id(), subject);
      return true;
    }
    return it->second == subject;
  }
  if (subject.is_var() || pattern.sym() != subject.sym() || pattern.arity() != subject.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.arg(i), subject.arg(i), s)) return false;
  return true;
}

namespace {

bool occurs_in(VarId v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  for (const auto& a : t.args())
    if (occurs_in(v, a)) return true;
  return false;
}

}  // namespace

std::optional<Subst> unify(const std::vector<std::pair<Term, Term>>& eqs) {
  // Robinson: solve one equation at a time, applying the binding eagerly.
  Subst s;
  std::vector<std::pair<Term, Term>> todo(eqs.rbegin(), eqs.rend());
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    a = subst(a, s);
    b = subst(b, s);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs_in(a.var_id(), b)) return std::nullopt;
      Subst one{{a.var_id(), b}};
      for (auto& [v, t] : s) t = subst(t, one);
      s.emplace(a.var_id(), b);
      continue;
    }
    if (a.sym() != b.sym() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = a.arity(); i-- > 0;) todo.emplace_back(a.arg(i), b.arg(i));
  }
  return s;
}

namespace {

// Collects (path, subterm) pairs in pre-order.
void all_positions(const Term& t, std::vector<std::size_t>& path,
                   std::vector<std::pair<std::vector<std::size_t>, Term>>& out) {
  out.emplace_back(path, t);
  if (t.is_var()) return;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i);
    all_positions(t.arg(i), path, out);
    path.pop_back();
  }
}

Term replace(const Term& t, const std::vector<std::size_t>& path, std::size_t k, const Term& with) {
  if (k == path.size()) return with;
  std::vector<Term> args = t.args();
  args[path[k]] = replace(args[path[k]], path, k + 1, with);
  return Term::app(t.sym(), std::move(args));
}

}  // namespace

Term normalize(const Term& t0, const RewriteSystem& R) {
  Term t = t0;
  for (std::size_t guard = 0; guard < 100000; ++guard) {
    std::vector<std::pair<std::vector<std::size_t>, Term>> pos;
    std::vector<std::size_t> path;
    all_positions(t, path, pos);
    bool rewritten = false;
    for (const auto& [p, sub] : pos) {
      for (const auto& r : R.rules) {
        Subst s;
        if (match(r.lhs, sub, s)) {
          t = replace(t, p, 0, subst(r.rhs, s));
          rewritten = true;
          break;
        }
      }
      if (rewritten) break;
    }
    if (!rewritten) return t;
  }
  throw std::runtime_error("oracle normalize: no normal form within the guard");
}

bool lpo_gt(const Term& s, const Term& t, const std::map<fvsat::SymId, std::size_t>& rank) {
  if (s.is_var()) return false;
  if (t.is_var()) return occurs_in(t.var_id(), s);
  // (1) some argument of s is t or greater than t
  for (const auto& a : s.args())
    if (a == t || lpo_gt(a, t, rank)) return true;
  // (2)/(3) s must dominate every argument of t
  for (const auto& b : t.args())
    if (!lpo_gt(s, b, rank)) return false;
  std::size_t rs = rank.at(s.sym()), rt = rank.at(t.sym());
  if (rs < rt) return true;
  if (rs > rt) return false;
  for (std::size_t i = 0; i < std::min(s.arity(), t.arity()); ++i) {
    if (s.arg(i) == t.arg(i)) continue;
    return lpo_gt(s.arg(i), t.arg(i), rank);
  }
  return s.arity() > t.arity();
}

namespace {

std::set<VarId> vars_of(const Term& t) {
  std::set<VarId> out;
  std::function<void(const Term&)> go = [&](const Term& u) {
    if (u.is_var()) {
      out.insert(u.var_id());
      return;
    }
    for (const auto& a : u.args()) go(a);
  };
  go(t);
  return out;
}

Value min_value(Value a, Value b) {
  if (a.inf) return b;
  if (b.inf) return a;
  return a.v <= b.v ? a : b;
}

}  // namespace

Value delta(const TermSet& T) {
  std::set<VarId> member_vars, inner;
  long nonvar = 0;
  for (const auto& t : T) {
    if (t.is_var()) {
      member_vars.insert(t.var_id());
    } else {
      ++nonvar;
      for (auto v : vars_of(t)) inner.insert(v);
    }
  }
  if (nonvar == 0) return Value{true, 0};
  long free = 0;
  for (auto v : inner)
    if (!member_vars.count(v)) ++free;
  return Value{false, nonvar - free};
}

std::vector<TermSet> decompositions(const TermSet& T) {
  std::set<TermSet> seen;
  std::function<void(const TermSet&)> go = [&](const TermSet& S) {
    if (!seen.insert(S).second) return;
    for (const auto& t : S) {
      if (t.is_var()) continue;
      TermSet next = S;
      next.erase(t);
      for (const auto& a : t.args()) next.insert(a);
      go(next);
    }
  };
  go(T);
  return {seen.begin(), seen.end()};
}

Value mu_general(const TermSet& T) {
  Value best{true, 0};
  for (const auto& D : decompositions(T)) best = min_value(best, delta(D));
  return best;
}

Value mu(const TermSet& T) {
  std::set<TermSet> seen;
  Value best{true, 0};
  std::function<void(const TermSet&)> go = [&](const TermSet& S) {
    if (!seen.insert(S).second) return;
    best = min_value(best, mu_general(S));
    std::set<Term> subs;
    std::function<void(const Term&)> collect = [&](const Term& u) {
      subs.insert(u);
      if (!u.is_var())
        for (const auto& a : u.args()) collect(a);
    };
    for (const auto& t : S) collect(t);
    for (auto i = subs.begin(); i != subs.end(); ++i)
      for (auto j = std::next(i); j != subs.end(); ++j) {
        auto u = unify({{*i, *j}});
        if (!u) continue;
        TermSet next;
        for (const auto& t : S) next.insert(subst(t, *u));
        go(next);
      }
  };
  go(T);
  return best;
}

TermSet closure(const TermSet& E, const std::vector<DeductionRule>& rules, std::size_t depth,
                const RewriteSystem* R, const std::function<bool(const Term&)>& keep) {
  TermSet known = E;
  for (std::size_t round = 0; round < depth; ++round) {
    std::vector<Term> snapshot(known.begin(), known.end());
    TermSet fresh;
    for (const auto& r : rules) {
      std::vector<Term> premises(r.lhs.begin(), r.lhs.end());
      std::function<void(std::size_t, Subst&)> go = [&](std::size_t i, Subst& s) {
        if (i == premises.size()) {
          Term c = subst(r.rhs, s);
          if (R) c = oracle::normalize(c, *R);
          if (!known.count(c) && keep(c)) fresh.insert(c);
          return;
        }
        for (const auto& k : snapshot) {
          Subst next = s;
          if (match(premises[i], k, next)) go(i + 1, next);
        }
      };
      Subst empty;
      go(0, empty);
    }
    if (fresh.empty()) break;
    known.insert(fresh.begin(), fresh.end());
  }
  return known;
}

Term Gen::term(const std::vector<std::pair<std::string, std::size_t>>& symbols,
               const std::vector<Term>& leaves, std::size_t depth) {
  if (depth == 0 || symbols.empty() || coin(0.3)) return leaves[below(leaves.size())];
  const auto& [name, arity] = symbols[below(symbols.size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(term(symbols, leaves, depth - 1));
  return Term::app(name, std::move(args));
}

std::vector<std::pair<std::string, std::size_t>> symbols_of(const fvsat::Signature& sig) {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (auto f : sig.functions()) out.emplace_back(fvsat::symbol_name(f), sig.info(f).arity);
  return out;
}

}  // namespace oracle
