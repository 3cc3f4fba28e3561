#include "fvsat/saturate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace fvsat {

DeductionSystem SaturationResult::system() const {
  DeductionSystem s;
  s.mode = DeductionMode::EmptyTheory;
  for (const auto& r : rules) s.rules.push_back(r.rule);
  return s;
}

std::vector<DeductionRule> SaturationResult::plain_rules() const { return system().rules; }

DeductionRule simplify(const DeductionRule& r) {
  VarSet keep;
  for (const auto& t : r.lhs)
    if (!t.is_var()) collect_vars(t, keep);
  collect_vars(r.rhs, keep);
  DeductionRule out{{}, r.rhs, r.origin};
  for (const auto& t : r.lhs)
    if (!t.is_var() || keep.count(t.var_id())) out.lhs.insert(t);
  return out;
}

std::vector<DeductionRule> variant_rules(const std::vector<DeductionRule>& L0,
                                         const RewriteSystem& R, std::size_t depth_bound) {
  std::vector<DeductionRule> out;
  std::set<std::string> keys;
  for (const auto& c : L0) {
    const Term& f = c.rhs;
    for (const auto& v : variants(f, R, depth_bound)) {
      DeductionRule r;
      for (const auto& x : f.args()) r.lhs.insert(fvsat::apply(x, v.theta));
      r.rhs = v.reduct;
      r.origin = v.theta.empty() ? "constructor" : "variant";
      r = simplify(r);
      if (r.is_identity()) continue;
      if (keys.insert(canonical_key(r)).second) out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<DeductionRule> closure_children(const DeductionRule& inc, const DeductionRule& other) {
  std::vector<DeductionRule> out;
  DeductionRule a = inc.renamed();
  DeductionRule b = other.renamed();
  for (const auto& s : b.lhs) {
    if (s.is_var()) continue;
    auto u = mgu(a.rhs, s);
    if (!u) continue;
    DeductionRule child;
    child.origin = "closure";
    for (const auto& t : a.lhs) child.lhs.insert(fvsat::apply(t, *u.mgu));
    for (const auto& t : b.lhs)
      if (t != s) child.lhs.insert(fvsat::apply(t, *u.mgu));
    child.rhs = fvsat::apply(b.rhs, *u.mgu);
    out.push_back(simplify(child));
  }
  return out;
}

std::vector<DeductionRule> closure_step(const std::vector<DeductionRule>& L, const Signature& sig,
                                        bool delete_trivial) {
  std::set<std::string> keys;
  for (const auto& r : L) keys.insert(canonical_key(r));
  std::vector<DeductionRule> out;
  for (const auto& a : L) {
    if (classify(a, sig) != RuleKind::Increasing) continue;
    for (const auto& b : L) {
      for (auto& c : closure_children(a, b)) {
        if (c.is_identity() || (delete_trivial && c.rhs_in_lhs())) continue;
        if (keys.insert(canonical_key(c)).second) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

namespace {

bool in_sorted(const std::vector<Term>& K, const Term& t) {
  return std::binary_search(K.begin(), K.end(), t);
}

void insert_sorted(std::vector<Term>& K, const Term& t) {
  auto it = std::lower_bound(K.begin(), K.end(), t);
  if (it == K.end() || *it != t) K.insert(it, t);
}

}  // namespace

void for_each_instance(const DeductionRule& r, const std::vector<Term>& K, const Term* target,
                       const std::function<bool(const Bindings&)>& fn) {
  Bindings b0;
  if (target && !match_into(r.rhs, *target, b0)) return;
  std::vector<Term> nonvar, varp;
  for (const auto& t : r.lhs) (t.is_var() ? varp : nonvar).push_back(t);
  // Larger premises first: they constrain the matcher the most.
  std::sort(nonvar.begin(), nonvar.end(),
            [](const Term& a, const Term& b) { return a.size() > b.size(); });
  VarSet rhs_vars = vars(r.rhs);
  bool stop = false;

  std::function<void(std::size_t, Bindings&)> vars_rec;
  vars_rec = [&](std::size_t i, Bindings& b) {
    if (stop) return;
    if (i == varp.size()) {
      for (auto v : rhs_vars)
        if (!b.count(v)) return;  // conclusion not ground
      stop = fn(b);
      return;
    }
    VarId v = varp[i].var_id();
    auto it = b.find(v);
    if (it != b.end()) {
      if (in_sorted(K, it->second)) vars_rec(i + 1, b);
      return;
    }
    for (const auto& k : K) {
      b[v] = k;
      vars_rec(i + 1, b);
      b.erase(v);
      if (stop) return;
    }
  };

  std::function<void(std::size_t, const Bindings&)> rec = [&](std::size_t i, const Bindings& b) {
    if (stop) return;
    if (i == nonvar.size()) {
      Bindings c = b;
      vars_rec(0, c);
      return;
    }
    const Term& p = nonvar[i];
    // A fully bound premise needs only a membership test.
    bool bound = true;
    for (auto v : vars(p))
      if (!b.count(v)) bound = false;
    if (bound) {
      if (in_sorted(K, fvsat::apply(p, Substitution(b)))) rec(i + 1, b);
      return;
    }
    for (const auto& k : K) {
      if (k.is_var() || k.sym() != p.sym()) continue;
      Bindings c = b;
      if (match_into(p, k, c)) rec(i + 1, c);
      if (stop) return;
    }
  };
  rec(0, b0);
}

namespace {

struct Frozen {
  std::vector<Term> K;
  Term goal;
};

Frozen freeze(const DeductionRule& r) {
  Substitution f;
  for (auto v : r.variables()) f.bind(v, Term::app("$k" + std::to_string(v)));
  Frozen out;
  for (const auto& t : r.lhs) insert_sorted(out.K, fvsat::apply(t, f));
  out.goal = fvsat::apply(r.rhs, f);
  return out;
}

bool derivable_within(std::vector<Term> K, const Term& goal,
                      const std::vector<const DeductionRule*>& rules, std::size_t k) {
  if (in_sorted(K, goal)) return true;
  if (k == 0) return false;
  bool found = false;
  for (const auto* r : rules) {
    // Last step: only instances concluding the goal matter.
    const Term* target = k == 1 ? &goal : nullptr;
    for_each_instance(*r, K, target, [&](const Bindings& b) {
      Term c = fvsat::apply(r->rhs, Substitution(b));
      if (in_sorted(K, c)) return false;
      if (c == goal) return found = true;
      std::vector<Term> K2 = K;
      insert_sorted(K2, c);
      if (derivable_within(std::move(K2), goal, rules, k - 1)) return found = true;
      return false;
    });
    if (found) return true;
  }
  return false;
}

}  // namespace

bool is_redundant(const DeductionRule& r, const std::vector<DeductionRule>& L, std::size_t k) {
  Frozen fz = freeze(r);
  if (in_sorted(fz.K, fz.goal)) return true;
  std::string self = canonical_key(r);
  std::vector<const DeductionRule*> others;
  for (const auto& o : L)
    if (canonical_key(o) != self) others.push_back(&o);
  return derivable_within(fz.K, fz.goal, others, k);
}

namespace {

// Removes rules whose rhs is a premise. Children of a removed rule inherit
// its parents so provenance stays within the result.
void drop_trivial(SaturationResult& res) {
  std::vector<std::vector<std::size_t>> mapped(res.rules.size());
  std::vector<SaturatedRule> kept;
  for (std::size_t i = 0; i < res.rules.size(); ++i) {
    std::vector<std::size_t> ps;
    for (auto p : res.rules[i].parents)
      for (auto q : mapped[p])
        if (std::find(ps.begin(), ps.end(), q) == ps.end()) ps.push_back(q);
    if (res.rules[i].rule.rhs_in_lhs()) {
      ++res.dropped_trivial;
      mapped[i] = ps;
      continue;
    }
    mapped[i] = {kept.size()};
    SaturatedRule r = std::move(res.rules[i]);
    r.parents = std::move(ps);
    kept.push_back(std::move(r));
  }
  res.rules = std::move(kept);
}

}  // namespace

SaturationResult saturate(const std::vector<DeductionRule>& L0, const RewriteSystem& R,
                          const Signature& sig, const SaturationConfig& cfg) {
  SaturationResult res;
  std::set<std::string> keys;
  std::deque<std::size_t> queue;
  std::vector<std::size_t> active;

  auto admit = [&](DeductionRule r, std::vector<std::size_t> parents, std::size_t gen) {
    RuleKind kind = classify(r, sig);
    res.rules.push_back(SaturatedRule{std::move(r), kind, gen, std::move(parents)});
    queue.push_back(res.rules.size() - 1);
  };

  for (auto& r : variant_rules(L0, R, cfg.variant_depth)) {
    if (keys.insert(canonical_key(r)).second) admit(std::move(r), {}, 0);
  }

  auto lineage = [&](std::size_t i) {
    std::vector<DeductionRule> chain;
    for (;;) {
      chain.push_back(res.rules[i].rule);
      const auto& ps = res.rules[i].parents;
      if (ps.empty()) break;
      std::size_t next = ps[0];
      for (auto p : ps)
        if (res.rules[p].generation > res.rules[next].generation) next = p;
      i = next;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  };

  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    active.push_back(i);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (increasing, other)
    for (auto j : active) {
      if (res.rules[i].kind == RuleKind::Increasing) pairs.emplace_back(i, j);
      if (j != i && res.rules[j].kind == RuleKind::Increasing) pairs.emplace_back(j, i);
    }
    for (auto [a, b] : pairs) {
      for (auto& c : closure_children(res.rules[a].rule, res.rules[b].rule)) {
        if (c.is_identity()) continue;
        std::string key = canonical_key(c);
        if (keys.count(key)) {
          ++res.dropped_duplicate;
          continue;
        }
        if (cfg.redundancy_steps > 0 && classify(c, sig) == RuleKind::Increasing &&
            is_redundant(c, res.plain_rules(), cfg.redundancy_steps)) {
          ++res.dropped_redundant;
          keys.insert(key);
          continue;
        }
        std::size_t gen = std::max(res.rules[a].generation, res.rules[b].generation) + 1;
        if (gen > cfg.max_rounds || res.rules.size() >= cfg.max_rules) {
          res.status = SaturationStatus::Diverged;
          res.reason = gen > cfg.max_rounds ? "closure generation bound reached"
                                            : "rule count bound reached";
          res.offending = lineage(res.rules[a].generation >= res.rules[b].generation ? a : b);
          res.offending.push_back(c);
          if (cfg.delete_trivial) drop_trivial(res);
          return res;
        }
        keys.insert(key);
        admit(std::move(c), {a, b}, gen);
      }
    }
  }
  if (cfg.delete_trivial) drop_trivial(res);
  return res;
}

}  // namespace fvsat
