#include "fvsat/constraints.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fvsat {

// ---------------------------------------------------------------------------
// Systems

VarSet ConstraintSystem::variables() const {
  VarSet vs;
  for (const auto& c : constraints) {
    for (const auto& e : c.knowledge) collect_vars(e, vs);
    collect_vars(c.goal, vs);
  }
  for (const auto& [s, t] : equations) {
    collect_vars(s, vs);
    collect_vars(t, vs);
  }
  return vs;
}

std::vector<Term> ConstraintSystem::all_terms() const {
  std::vector<Term> out;
  for (const auto& c : constraints) {
    out.insert(out.end(), c.knowledge.begin(), c.knowledge.end());
    out.push_back(c.goal);
  }
  for (const auto& [s, t] : equations) {
    out.push_back(s);
    out.push_back(t);
  }
  return out;
}

bool ConstraintSystem::ground() const {
  for (const auto& t : all_terms())
    if (!t.ground()) return false;
  return true;
}

std::vector<Term> make_knowledge(std::vector<Term> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
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

std::optional<std::string> check_wellformed(const ConstraintSystem& C) {
  VarSet originated;
  for (std::size_t i = 0; i < C.constraints.size(); ++i) {
    const auto& c = C.constraints[i];
    if (i > 0) {
      const auto& prev = C.constraints[i - 1].knowledge;
      if (!std::includes(c.knowledge.begin(), c.knowledge.end(), prev.begin(), prev.end()))
        return "knowledge of constraint " + std::to_string(i + 1) +
               " does not contain that of constraint " + std::to_string(i);
    }
    for (const auto& e : c.knowledge)
      for (auto v : vars(e))
        if (!originated.count(v))
          return "knowledge of constraint " + std::to_string(i + 1) +
                 " uses a variable not occurring in an earlier goal";
    collect_vars(c.goal, originated);
  }
  return std::nullopt;
}

std::string to_string(const Constraint& c) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < c.knowledge.size(); ++i) os << (i ? ", " : "") << to_string(c.knowledge[i]);
  os << "} |> " << to_string(c.goal);
  return os.str();
}

std::string to_string(const ConstraintSystem& C) {
  std::ostringstream os;
  for (const auto& c : C.constraints) os << to_string(c) << "\n";
  for (const auto& [s, t] : C.equations) os << to_string(s) << " = " << to_string(t) << "\n";
  return os.str();
}

ConstraintSystem apply(const ConstraintSystem& C, const Substitution& sigma) {
  ConstraintSystem out;
  std::set<std::pair<std::vector<Term>, Term>> seen;
  for (const auto& c : C.constraints) {
    Constraint d{make_knowledge(fvsat::apply(c.knowledge, sigma)), fvsat::apply(c.goal, sigma)};
    if (seen.emplace(d.knowledge, d.goal).second) out.constraints.push_back(std::move(d));
  }
  for (const auto& [s, t] : C.equations) out.equations.emplace_back(fvsat::apply(s, sigma), fvsat::apply(t, sigma));
  return out;
}

std::string canonical_key(const ConstraintSystem& C) {
  std::vector<Term> ts;
  for (const auto& c : C.constraints)
    ts.push_back(Term::app("$c", {c.goal, Term::app("$e", c.knowledge)}));
  for (const auto& [s, t] : C.equations) ts.push_back(Term::app("$eq", {s, t}));
  return renaming_key(ts);
}

// ---------------------------------------------------------------------------
// Preparation

std::vector<PreparedBranch> prepare(const ConstraintSystem& C0, const RewriteSystem& R,
                                    std::size_t variant_depth) {
  std::vector<Term> terms = C0.all_terms();
  std::vector<PreparedBranch> out;
  std::set<std::string> keys;
  for (auto& tv : variants_tuple(terms, R, variant_depth)) {
    std::size_t k = 0;
    ConstraintSystem C;
    for (const auto& c : C0.constraints) {
      std::vector<Term> E(tv.reducts.begin() + k, tv.reducts.begin() + k + c.knowledge.size());
      k += c.knowledge.size();
      C.constraints.push_back(Constraint{make_knowledge(std::move(E)), tv.reducts[k++]});
    }
    std::vector<Equation> eqs;
    for (std::size_t j = 0; j < C0.equations.size(); ++j, k += 2)
      eqs.emplace_back(tv.reducts[k], tv.reducts[k + 1]);
    auto u = mgu(eqs);
    if (!u) continue;
    PreparedBranch b{tv.theta, *u.mgu, fvsat::apply(C, *u.mgu)};
    if (keys.insert(canonical_key(b.system)).second) out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transformation rules

SolverRules SolverRules::from(const SaturationResult& sat) {
  SolverRules L;
  for (const auto& r : sat.rules) {
    if (r.rule.rhs_in_lhs()) continue;
    if (r.kind == RuleKind::Increasing) {
      L.increasing.push_back(r.rule);
      if (r.rule.lhs.empty() && r.rule.rhs.ground()) L.nullary.push_back(r.rule.rhs);
    } else {
      L.decreasing.push_back(r.rule);
    }
  }
  std::sort(L.nullary.begin(), L.nullary.end(), [](const Term& a, const Term& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return L;
}

SolverRules SolverRules::from(const std::vector<DeductionRule>& rules, const Signature& sig) {
  SaturationResult sat;
  for (const auto& r : rules) sat.rules.push_back(SaturatedRule{r, classify(r, sig), 0, {}});
  return from(sat);
}

std::vector<DeductionRule> SolverRules::all() const {
  std::vector<DeductionRule> out = increasing;
  out.insert(out.end(), decreasing.begin(), decreasing.end());
  return out;
}

std::optional<std::size_t> leftmost_unsolved(const ConstraintSystem& C) {
  for (std::size_t i = 0; i < C.constraints.size(); ++i)
    if (!C.constraints[i].goal.is_var()) return i;
  return std::nullopt;
}

namespace {

// Enumerates mgus of `base` extended with l ≟ e for each premise l, where
// e ranges over the non-variable members of E (repetition allowed).
void for_each_unifier(const std::vector<Term>& premises, const std::vector<Term>& E,
                      std::vector<Equation> base,
                      const std::function<void(const Substitution&)>& fn) {
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    auto u = mgu(base);
    if (!u) return;
    if (i == premises.size()) {
      fn(*u.mgu);
      return;
    }
    const Term& l = premises[i];
    for (const auto& e : E) {
      if (e.is_var() || e.sym() != l.sym()) continue;
      base.emplace_back(l, e);
      rec(i + 1);
      base.pop_back();
    }
  };
  rec(0);
}

std::vector<Term> nonvar_list(const DeductionRule& r) {
  std::vector<Term> out;
  for (const auto& t : r.lhs)
    if (!t.is_var()) out.push_back(t);
  return out;
}

std::vector<Term> var_list(const DeductionRule& r) {
  std::vector<Term> out;
  for (const auto& t : r.lhs)
    if (t.is_var()) out.push_back(t);
  return out;
}

}  // namespace

std::vector<Step> apply_unif(const ConstraintSystem& C, std::size_t i) {
  std::vector<Step> out;
  const auto& c = C.constraints.at(i);
  for (const auto& e : c.knowledge) {
    if (e.is_var()) continue;
    auto u = mgu(e, c.goal);
    if (!u) continue;
    ConstraintSystem D = C;
    D.constraints.erase(D.constraints.begin() + i);
    out.push_back(Step{StepKind::Unif, i, "", *u.mgu, fvsat::apply(D, *u.mgu)});
  }
  return out;
}

std::vector<Step> apply_reduce1(const ConstraintSystem& C, std::size_t i, const SolverRules& L) {
  std::vector<Step> out;
  const auto& c = C.constraints.at(i);
  if (c.goal.is_var()) return out;
  for (const auto& rule : L.increasing) {
    if (!rule.rhs.is_var() && rule.rhs.sym() != c.goal.sym()) continue;
    DeductionRule r = rule.renamed();
    for_each_unifier(nonvar_list(r), c.knowledge, {{r.rhs, c.goal}}, [&](const Substitution& s) {
      ConstraintSystem D;
      D.equations = C.equations;
      D.constraints.assign(C.constraints.begin(), C.constraints.begin() + i);
      for (const auto& y : var_list(r)) D.constraints.push_back(Constraint{c.knowledge, y});
      D.constraints.insert(D.constraints.end(), C.constraints.begin() + i + 1, C.constraints.end());
      out.push_back(Step{StepKind::Reduce1, i, to_string(rule), s, fvsat::apply(D, s)});
    });
  }
  return out;
}

std::vector<Step> apply_reduce2(const ConstraintSystem& C, std::size_t i, const SolverRules& L) {
  std::vector<Step> out;
  const auto& c = C.constraints.at(i);
  for (const auto& rule : L.decreasing) {
    DeductionRule r = rule.renamed();
    for_each_unifier(nonvar_list(r), c.knowledge, {}, [&](const Substitution& s) {
      Term added = fvsat::apply(r.rhs, s);
      if (in_sorted(make_knowledge(fvsat::apply(c.knowledge, s)), added)) return;
      ConstraintSystem D;
      D.equations = C.equations;
      D.constraints.assign(C.constraints.begin(), C.constraints.begin() + i);
      for (const auto& y : var_list(r)) D.constraints.push_back(Constraint{c.knowledge, y});
      std::vector<Term> E = c.knowledge;
      E.push_back(r.rhs);
      D.constraints.push_back(Constraint{E, c.goal});
      for (std::size_t j = i + 1; j < C.constraints.size(); ++j) {
        std::vector<Term> F = C.constraints[j].knowledge;
        F.push_back(r.rhs);
        D.constraints.push_back(Constraint{F, C.constraints[j].goal});
      }
      out.push_back(Step{StepKind::Reduce2, i, to_string(rule), s, fvsat::apply(D, s)});
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solving

void SolveStats::merge(const SolveStats& o) {
  nodes += o.nodes;
  steps += o.steps;
  accounting_violations += o.accounting_violations;
  wellformed_violations += o.wellformed_violations;
  if (first_violation.empty()) first_violation = o.first_violation;
  max_guesses = std::max(max_guesses, o.max_guesses);
  guess_bound_violations += o.guess_bound_violations;
  ground_decisions += o.ground_decisions;
  implied_dropped += o.implied_dropped;
}

std::optional<Substitution> solved_form_witness(const ConstraintSystem& C,
                                                const std::vector<Term>& nullary) {
  Substitution rho;
  for (const auto& c : C.constraints) {
    if (!c.goal.is_var()) return std::nullopt;
    if (rho.lookup(c.goal.var_id())) continue;
    std::optional<Term> best;
    for (const auto& e : c.knowledge) {
      Term g = fvsat::apply(e, rho);
      if (!g.ground()) continue;
      if (!best || g.size() < best->size() || (g.size() == best->size() && g < *best)) best = g;
    }
    if (!best && !nullary.empty()) best = nullary.front();
    if (!best) return std::nullopt;
    rho.bind(c.goal.var_id(), *best);
  }
  return rho;
}

namespace {

Term default_ground_term() { return Term::app("$w"); }

Substitution ground_out(const Substitution& s, const VarSet& on) {
  Substitution fill;
  Substitution out;
  for (auto v : on) {
    Term t = fvsat::apply(Term::var(v), s);
    for (auto w : vars(t)) fill.bind(w, default_ground_term());
    out.bind(v, fvsat::apply(t, fill));
  }
  return out;
}

// Checks the per-step variable accounting and well-formedness.
void check_step(const ConstraintSystem& before, const Step& st, SolveStats& stats) {
  VarSet vb = before.variables();
  VarSet va = st.result.variables();
  bool instantiates = false;
  for (auto v : vb) {
    Term img = fvsat::apply(Term::var(v), st.sigma);
    if (!(img.is_var() && img.var_id() == v)) instantiates = true;
  }
  bool ok;
  if (!instantiates)
    ok = std::includes(vb.begin(), vb.end(), va.begin(), va.end());
  else
    ok = va.size() < vb.size();
  if (!ok) {
    ++stats.accounting_violations;
    if (stats.first_violation.empty())
      stats.first_violation = "variable accounting after " + st.rule + " on\n" + to_string(before);
  }
  if (auto w = check_wellformed(st.result)) {
    ++stats.wellformed_violations;
    if (stats.first_violation.empty()) stats.first_violation = *w;
  }
}

class Search {
 public:
  Search(const SolverRules& L, const SolveOptions& opt) : L_(L), opt_(opt) {}

  bool dfs(const ConstraintSystem& C_in, const Substitution& acc) {
    if (stats.nodes >= opt_.node_budget) {
      exhausted = true;
      return false;
    }
    ++stats.nodes;
    auto settled = settle(C_in);
    if (!settled) return false;
    const ConstraintSystem& C = *settled;
    auto i = leftmost_unsolved(C);
    if (!i) {
      auto w = solved_form_witness(C, L_.nullary);
      if (!w) return false;
      solution = compose(acc, *w);
      return true;
    }
    if (!visited_.insert(canonical_key(C)).second) return false;
    std::vector<Step> steps = apply_unif(C, *i);
    for (auto& s : apply_reduce2(C, *i, L_)) steps.push_back(std::move(s));
    for (auto& s : apply_reduce1(C, *i, L_)) steps.push_back(std::move(s));
    for (const auto& st : steps) {
      ++stats.steps;
      if (opt_.check_invariants) check_step(C, st, stats);
      trace.push_back(st.kind == StepKind::Unif ? "unif" : (st.kind == StepKind::Reduce1 ? "reduce1 " : "reduce2 ") + st.rule);
      if (dfs(st.result, compose(acc, st.sigma))) return true;
      trace.pop_back();
      if (exhausted) return false;
    }
    return false;
  }

  SolveStats stats;
  bool exhausted = false;
  Substitution solution;
  std::vector<std::string> trace;

 private:
  // Drops constraints that cannot change the outcome. A ground constraint
  // with a non-variable goal is decided directly: underivable stays
  // underivable under every substitution, derivable needs no further steps.
  // E' |> t is implied by an earlier E |> t with E a subset of E'; knowledge
  // only grows along the system, so origination is kept.
  std::optional<ConstraintSystem> settle(const ConstraintSystem& C) {
    ConstraintSystem out;
    out.equations = C.equations;
    for (const auto& c : C.constraints) {
      if (c.goal.is_var()) {
        out.constraints.push_back(c);
        continue;
      }
      bool ground = c.goal.ground();
      for (const auto& e : c.knowledge) ground = ground && e.ground();
      if (ground) {
        ++stats.ground_decisions;
        auto key = std::make_pair(c.knowledge, c.goal);
        auto it = ground_memo_.find(key);
        if (it == ground_memo_.end())
          it = ground_memo_.emplace(key, ground_deducible(c.knowledge, c.goal, L_)).first;
        if (!it->second) return std::nullopt;
        continue;
      }
      bool implied = false;
      for (const auto& o : out.constraints)
        if (o.goal == c.goal && std::includes(c.knowledge.begin(), c.knowledge.end(),
                                              o.knowledge.begin(), o.knowledge.end()))
          implied = true;
      if (implied)
        ++stats.implied_dropped;
      else
        out.constraints.push_back(c);
    }
    return out;
  }

  const SolverRules& L_;
  SolveOptions opt_;
  std::set<std::string> visited_;
  std::map<std::pair<std::vector<Term>, Term>, bool> ground_memo_;
};

}  // namespace

SolveResult solve(const ConstraintSystem& C_in, const SolverRules& L, const SolveOptions& opt) {
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
  Search s(L, opt);
  bool found = s.dfs(C, pre);
  res.stats = s.stats;
  if (found) {
    res.status = SolveStatus::Sat;
    res.witness = ground_out(s.solution, C_in.variables());
    res.trace = s.trace;
    ConstraintSystem inst = fvsat::apply(C_in, res.witness);
    inst.equations.clear();
    if (!decide_ground(inst, L).valid)
      throw std::logic_error("solved-form witness failed ground verification");
  } else {
    res.status = s.exhausted ? SolveStatus::Unknown : SolveStatus::Fail;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Ground deduction

namespace {

struct Justification {
  const DeductionRule* rule = nullptr;  // null for initial knowledge
  Bindings sigma;
};

// Matches the non-variable premises of `r` into K, starting from `b0`.
void match_nonvar(const DeductionRule& r, const std::vector<Term>& K, const Bindings& b0,
                  const std::function<void(const Bindings&)>& fn) {
  std::vector<Term> prem = nonvar_list(r);
  std::sort(prem.begin(), prem.end(), [](const Term& a, const Term& b) { return a.size() > b.size(); });
  std::function<void(std::size_t, const Bindings&)> rec = [&](std::size_t i, const Bindings& b) {
    if (i == prem.size()) {
      fn(b);
      return;
    }
    for (const auto& k : K) {
      if (k.is_var() || k.sym() != prem[i].sym()) continue;
      Bindings c = b;
      if (match_into(prem[i], k, c)) rec(i + 1, c);
    }
  };
  rec(0, b0);
}

bool all_bound(const DeductionRule& r, const Bindings& b) {
  for (auto v : r.variables())
    if (!b.count(v)) return false;
  return true;
}

/// Knowledge closed under decreasing rules, plus the terms of a candidate
/// set derivable from it with increasing rules.
class GroundClosure {
 public:
  GroundClosure(std::vector<Term> E, const SolverRules& L) : L_(L), K_(std::move(E)) {
    for (const auto& k : K_) kjust_[k] = D_[k] = Justification{};
  }

  bool deducible(const Term& t) {
    extend_candidates(t);
    saturate();
    return D_.count(t) > 0;
  }

  void derivation(const Term& t, Derivation& out) {
    std::set<Term> done;
    emit(t, done, out);
  }

  std::size_t size() const { return K_.size() + D_.size(); }

 private:
  void extend_candidates(const Term& t) {
    for (const auto& s : subterms(t))
      if (cand_.insert(s).second) dirty_ = true;
  }

  // Least fixpoint of the increasing rules over the candidate terms. Entries
  // are never replaced, so every justification only refers to older terms.
  void inc_closure() {
    for (const auto& s : subterms(TermSet(K_.begin(), K_.end()))) cand_.insert(s);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : cand_) {
        if (D_.count(c) || c.is_var()) continue;
        for (const auto& r : L_.increasing) {
          if (!r.rhs.is_var() && r.rhs.sym() != c.sym()) continue;
          Bindings b0;
          if (!match_into(r.rhs, c, b0)) continue;
          bool ok = false;
          match_nonvar(r, K_, b0, [&](const Bindings& b) {
            if (ok || !all_bound(r, b)) return;
            for (const auto& y : var_list(r))
              if (!D_.count(b.at(y.var_id()))) return;
            ok = true;
            D_[c] = Justification{&r, b};
          });
          if (ok) {
            changed = true;
            break;
          }
        }
      }
    }
  }

  void saturate() {
    if (!dirty_ && saturated_) return;
    for (;;) {
      inc_closure();
      std::vector<std::pair<Term, Justification>> fresh;
      for (const auto& r : L_.decreasing) {
        match_nonvar(r, K_, {}, [&](const Bindings& b) {
          if (!all_bound(r, b)) return;
          for (const auto& y : var_list(r))
            if (!D_.count(b.at(y.var_id()))) return;
          Term c = fvsat::apply(r.rhs, Substitution(b));
          if (in_sorted(K_, c)) return;
          for (const auto& f : fresh)
            if (f.first == c) return;
          fresh.emplace_back(c, Justification{&r, b});
        });
      }
      if (fresh.empty()) break;
      for (auto& [c, j] : fresh) {
        insert_sorted(K_, c);
        // A term already derivable keeps its older justification; the new
        // one may use the term itself as a premise.
        auto known = D_.find(c);
        kjust_[c] = known != D_.end() ? known->second : j;
        D_.emplace(c, j);
      }
      if (K_.size() > 100000) throw std::runtime_error("ground closure exceeds 100000 terms");
    }
    dirty_ = false;
    saturated_ = true;
  }

  void emit(const Term& t, std::set<Term>& done, Derivation& out) {
    if (done.count(t)) return;
    done.insert(t);
    const Justification* j = nullptr;
    auto kt = kjust_.find(t);
    if (kt != kjust_.end())
      j = &kt->second;
    else
      j = &D_.at(t);
    if (!j->rule) return;
    Substitution s(j->sigma);
    for (const auto& p : j->rule->lhs) emit(fvsat::apply(p, s), done, out);
    out.push_back(DerivationStep{*j->rule, s, fvsat::apply(j->rule->lhs, s), t});
  }

  const SolverRules& L_;
  std::vector<Term> K_;
  std::map<Term, Justification> kjust_;
  std::map<Term, Justification> D_;
  TermSet cand_;
  bool dirty_ = true;
  bool saturated_ = false;
};

}  // namespace

GroundResult decide_ground(const ConstraintSystem& G, const SolverRules& L) {
  if (!G.ground()) throw std::invalid_argument("decide_ground expects a ground system");
  GroundResult res;
  res.valid = true;
  std::map<std::vector<Term>, std::unique_ptr<GroundClosure>> memo;
  for (const auto& c : G.constraints) {
    auto& gc = memo[c.knowledge];
    if (!gc) gc = std::make_unique<GroundClosure>(c.knowledge, L);
    if (!gc->deducible(c.goal)) {
      res.valid = false;
      res.derivations.clear();
      break;
    }
    Derivation d;
    gc->derivation(c.goal, d);
    res.derivations.push_back(std::move(d));
  }
  for (const auto& [k, gc] : memo) res.nodes += gc->size();
  for (const auto& [s, t] : G.equations)
    if (s != t) res.valid = false;
  return res;
}

bool ground_deducible(const std::vector<Term>& E, const Term& t, const SolverRules& L) {
  ConstraintSystem G;
  G.constraints.push_back(Constraint{make_knowledge(E), t});
  return decide_ground(G, L).valid;
}

bool replay_derivation(const std::vector<Term>& E, const Term& goal, const Derivation& d,
                       const std::vector<DeductionRule>& L) {
  std::set<std::string> keys;
  for (const auto& r : L) keys.insert(canonical_key(r));
  TermSet K(E.begin(), E.end());
  for (const auto& st : d) {
    if (!keys.count(canonical_key(st.rule))) return false;
    if (fvsat::apply(st.rule.lhs, st.sigma) != st.premises) return false;
    if (fvsat::apply(st.rule.rhs, st.sigma) != st.conclusion) return false;
    if (!st.conclusion.ground()) return false;
    for (const auto& p : st.premises)
      if (!K.count(p)) return false;
    K.insert(st.conclusion);
  }
  return K.count(goal) > 0;
}

TermSet oracle_closure(const TermSet& E, const DeductionSystem& L, std::size_t depth,
                       const RewriteSystem* R, const OracleOptions& opt) {
  if (L.mode == DeductionMode::ModuloTheory && !R)
    throw std::invalid_argument("oracle_closure: modulo-theory system needs a rewrite system");
  std::set<SymId> redex_heads;
  if (R)
    for (const auto& r : R->rules) redex_heads.insert(r.lhs.sym());

  // Rules whose conclusion strictly contains every premise: with a focus
  // set they are only tried against candidate conclusions.
  auto conclusion_grows = [&](const DeductionRule& r) {
    if (r.rhs.is_var()) return false;
    VarSet rv = vars(r.rhs);
    for (const auto& p : r.lhs)
      if (!p.is_var() || !rv.count(p.var_id())) return false;
    if (L.mode == DeductionMode::ModuloTheory && redex_heads.count(r.rhs.sym())) return false;
    return true;
  };

  std::vector<Term> K(E.begin(), E.end());
  for (std::size_t round = 0; round < depth; ++round) {
    std::vector<Term> added;
    TermSet cands;
    if (opt.focus) {
      TermSet base(K.begin(), K.end());
      base.insert(opt.focus->begin(), opt.focus->end());
      for (const auto& s : subterms(base))
        if (!in_sorted(K, s) && s.ground()) cands.insert(s);
    }
    auto consider = [&](const DeductionRule& r, const Bindings& b) {
      Substitution s(b);
      Term c = fvsat::apply(r.rhs, s);
      if (L.mode == DeductionMode::ModuloTheory) c = normalize(c, *R);
      if (in_sorted(K, c)) return;
      if (opt.focus && !cands.count(c)) {
        std::size_t biggest = 0;
        for (const auto& p : r.lhs) biggest = std::max(biggest, fvsat::apply(p, s).size());
        if (c.size() > biggest) return;
      }
      added.push_back(c);
    };
    for (const auto& r : L.rules) {
      if (opt.focus && conclusion_grows(r)) {
        for (const auto& c : cands)
          for_each_instance(r, K, &c, [&](const Bindings& b) {
            consider(r, b);
            return false;
          });
      } else {
        for_each_instance(r, K, nullptr, [&](const Bindings& b) {
          consider(r, b);
          return added.size() > opt.max_terms;
        });
      }
    }
    if (added.empty()) break;
    for (const auto& a : added) insert_sorted(K, a);
    if (K.size() > opt.max_terms) throw std::runtime_error("oracle closure exceeds its term bound");
  }
  return TermSet(K.begin(), K.end());
}

// ---------------------------------------------------------------------------
// End to end

bool verify_witness(const ConstraintSystem& C0, const Substitution& sigma, const SolverRules& L,
                    const RewriteSystem& R) {
  ConstraintSystem G;
  for (const auto& c : C0.constraints) {
    std::vector<Term> E;
    for (const auto& e : c.knowledge) E.push_back(normalize(fvsat::apply(e, sigma), R));
    Term t = normalize(fvsat::apply(c.goal, sigma), R);
    G.constraints.push_back(Constraint{make_knowledge(std::move(E)), t});
  }
  if (!G.ground()) return false;
  for (const auto& [s, t] : C0.equations) {
    Term a = fvsat::apply(s, sigma), b = fvsat::apply(t, sigma);
    if (!a.ground() || !b.ground() || !eq_mod_H(a, b, R)) return false;
  }
  return decide_ground(G, L).valid;
}

Substitution lift_witness(const ConstraintSystem& C0, const PreparedBranch& b,
                          const Substitution& solution, const RewriteSystem& R) {
  Substitution full = compose(compose(b.theta, b.mu), solution);
  Substitution g = ground_out(full, C0.variables());
  Substitution out;
  for (const auto& [v, t] : g.map()) out.bind(v, normalize(t, R));
  return out;
}

SystemResult solve_system(const ConstraintSystem& C0, const RewriteSystem& R, const SolverRules& L,
                          const SolveOptions& opt) {
  SystemResult res;
  bool unknown = false;
  auto branches = prepare(C0, R);
  res.branches = branches.size();
  for (const auto& b : branches) {
    SolveResult r = solve(b.system, L, opt);
    res.stats.merge(r.stats);
    if (r.status == SolveStatus::Sat) {
      res.status = SolveStatus::Sat;
      res.witness = lift_witness(C0, b, r.witness, R);
      res.trace = r.trace;
      if (!verify_witness(C0, res.witness, L, R))
        throw std::logic_error("witness does not satisfy the input system");
      return res;
    }
    if (r.status == SolveStatus::Unknown) unknown = true;
  }
  res.status = unknown ? SolveStatus::Unknown : SolveStatus::Fail;
  return res;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Fail: return "fail";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace fvsat
