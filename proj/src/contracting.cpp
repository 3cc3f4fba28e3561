#include "fvsat/contracting.hpp"

#include <deque>
#include <set>

#include "fvsat/unify.hpp"

namespace fvsat {

bool operator<(const Measure& a, const Measure& b) {
  if (a.infinite) return false;
  if (b.infinite) return true;
  return a.value < b.value;
}

bool operator==(const Measure& a, const Measure& b) {
  return a.infinite == b.infinite && (a.infinite || a.value == b.value);
}

std::string to_string(const Measure& m) { return m.infinite ? "inf" : std::to_string(m.value); }

Measure delta(const TermSet& T) {
  TermSet nonvar;
  VarSet members;
  for (const auto& t : T) {
    if (t.is_var())
      members.insert(t.var_id());
    else
      nonvar.insert(t);
  }
  if (nonvar.empty()) return Measure::inf();
  long free_vars = 0;
  for (auto v : vars(nonvar))
    if (!members.count(v)) ++free_vars;
  return Measure::of(static_cast<long>(nonvar.size()) - free_vars);
}

std::vector<TermSet> decompositions(const TermSet& T) {
  std::set<TermSet> seen{T};
  std::deque<TermSet> work{T};
  std::vector<TermSet> out;
  while (!work.empty()) {
    TermSet cur = std::move(work.front());
    work.pop_front();
    out.push_back(cur);
    for (const auto& t : cur) {
      if (t.is_var()) continue;
      TermSet next = cur;
      next.erase(t);
      next.insert(t.args().begin(), t.args().end());
      if (seen.insert(next).second) work.push_back(std::move(next));
    }
  }
  return out;
}

Measure mu_general(const TermSet& T) {
  Measure best = Measure::inf();
  for (const auto& d : decompositions(T)) best = std::min(best, delta(d));
  return best;
}

Measure mu(const TermSet& T) {
  std::set<TermSet> seen{T};
  std::deque<TermSet> work{T};
  Measure best = Measure::inf();
  while (!work.empty()) {
    TermSet cur = std::move(work.front());
    work.pop_front();
    best = std::min(best, mu_general(cur));
    std::vector<Term> subs;
    for (const auto& s : subterms(cur)) subs.push_back(s);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i + 1; j < subs.size(); ++j) {
        auto u = mgu(subs[i], subs[j]);
        if (!u) continue;
        TermSet next = fvsat::apply(cur, *u.mgu);
        if (seen.insert(next).second) work.push_back(std::move(next));
      }
    }
  }
  return best;
}

TermSet strict_max_subterms(const TermSet& T) {
  TermSet out;
  for (const auto& t : T)
    if (!t.is_var()) out.insert(t.args().begin(), t.args().end());
  return out;
}

Measure mu_rule(const DeductionRule& r, RuleKind kind) {
  TermSet base = r.nonvar_premises();
  if (kind == RuleKind::Increasing) base.insert(r.rhs);
  return mu(strict_max_subterms(base));
}

ContractingReport is_contracting(const std::vector<DeductionRule>& rules, const Signature& sig) {
  ContractingReport rep;
  for (const auto& r : rules) {
    Measure m = mu_rule(r, classify(r, sig));
    rep.measures.push_back(m);
    if (!m.positive()) rep.contracting = false;
  }
  return rep;
}

}  // namespace fvsat
