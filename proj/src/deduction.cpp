#include "fvsat/deduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fvsat {

TermSet DeductionRule::var_premises() const {
  TermSet out;
  for (const auto& t : lhs)
    if (t.is_var()) out.insert(t);
  return out;
}

TermSet DeductionRule::nonvar_premises() const {
  TermSet out;
  for (const auto& t : lhs)
    if (!t.is_var()) out.insert(t);
  return out;
}

VarSet DeductionRule::variables() const {
  VarSet vs = vars(lhs);
  collect_vars(rhs, vs);
  return vs;
}

DeductionRule DeductionRule::renamed() const {
  Substitution r = renaming_for(variables());
  return DeductionRule{fvsat::apply(lhs, r), fvsat::apply(rhs, r), origin};
}

namespace {

// Shape with every variable collapsed, used to order premises independently
// of variable names.
void shape(const Term& t, std::string& out) {
  if (t.is_var()) {
    out += '?';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    shape(t.arg(i), out);
  }
  out += ')';
}

void number_vars(const Term& t, std::map<VarId, std::size_t>& ids) {
  if (t.ground()) return;
  if (t.is_var()) {
    ids.emplace(t.var_id(), ids.size());
    return;
  }
  for (const auto& a : t.args()) number_vars(a, ids);
}

void print_numbered(const Term& t, const std::map<VarId, std::size_t>& ids, std::string& out) {
  if (t.is_var()) {
    out += '?';
    out += std::to_string(ids.at(t.var_id()));
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    print_numbered(t.arg(i), ids, out);
  }
  out += ')';
}

struct Ordered {
  std::vector<Term> nonvar;  // in the chosen canonical order
  std::vector<Term> varp;
  std::map<VarId, std::size_t> ids;
  std::string key;
};

Ordered canonical_order(const DeductionRule& r) {
  std::vector<std::pair<std::string, Term>> shaped;
  std::vector<Term> varp;
  for (const auto& t : r.lhs) {
    if (t.is_var()) {
      varp.push_back(t);
      continue;
    }
    std::string s;
    shape(t, s);
    shaped.emplace_back(std::move(s), t);
  }
  std::stable_sort(shaped.begin(), shaped.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  // Group premises of identical shape; only their relative order is open.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < shaped.size();) {
    std::size_t j = i;
    while (j < shaped.size() && shaped[j].first == shaped[i].first) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<Term> cur;
  for (auto& s : shaped) cur.push_back(s.second);

  std::size_t budget = 40320;
  Ordered best;
  bool have = false;

  auto evaluate = [&](const std::vector<Term>& order) {
    std::map<VarId, std::size_t> ids;
    number_vars(r.rhs, ids);
    for (const auto& t : order) number_vars(t, ids);
    std::string key;
    print_numbered(r.rhs, ids, key);
    key += " <= ";
    for (const auto& t : order) {
      print_numbered(t, ids, key);
      key += ';';
    }
    // Variable premises: those already numbered sort by number, isolated
    // ones are interchangeable and only counted.
    std::vector<std::size_t> known;
    std::size_t isolated = 0;
    for (const auto& v : varp) {
      auto it = ids.find(v.var_id());
      if (it == ids.end())
        ++isolated;
      else
        known.push_back(it->second);
    }
    std::sort(known.begin(), known.end());
    for (auto k : known) key += "?" + std::to_string(k) + ";";
    key += "#" + std::to_string(isolated);
    if (!have || key < best.key) {
      have = true;
      best.key = key;
      best.nonvar = order;
      best.ids = ids;
    }
  };

  // Enumerate permutations within each group (odometer over groups).
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (budget == 0) return;
    if (g == groups.size()) {
      --budget;
      evaluate(cur);
      return;
    }
    auto [b, e] = groups[g];
    std::sort(cur.begin() + b, cur.begin() + e);
    do {
      rec(g + 1);
      if (budget == 0) return;
    } while (std::next_permutation(cur.begin() + b, cur.begin() + e));
  };
  rec(0);

  // Order variable premises by their canonical number, isolated ones last.
  std::sort(varp.begin(), varp.end(), [&](const Term& a, const Term& b) {
    auto ia = best.ids.find(a.var_id());
    auto ib = best.ids.find(b.var_id());
    std::size_t na = ia == best.ids.end() ? SIZE_MAX : ia->second;
    std::size_t nb = ib == best.ids.end() ? SIZE_MAX : ib->second;
    if (na != nb) return na < nb;
    return a.var_id() < b.var_id();
  });
  best.varp = varp;
  return best;
}

}  // namespace

std::string canonical_key(const DeductionRule& r) { return canonical_order(r).key; }

std::string to_string(const DeductionRule& r) {
  Ordered o = canonical_order(r);
  // Print variable premises first, as rules are usually written.
  std::vector<Term> all = o.varp;
  all.insert(all.end(), o.nonvar.begin(), o.nonvar.end());
  std::vector<Term> naming = all;
  naming.push_back(r.rhs);
  auto names = canonical_var_names(naming);
  std::string out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i) out += ", ";
    out += to_string(all[i], names);
  }
  out += all.empty() ? "=> " : " => ";
  out += to_string(r.rhs, names);
  return out;
}

DeductionRule constructor_rule(SymId f, std::size_t arity) {
  DeductionRule r;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) {
    args.push_back(fresh_var());
    r.lhs.insert(args.back());
  }
  r.rhs = Term::app(f, std::move(args));
  r.origin = "constructor";
  return r;
}

bool same_rules(const std::vector<DeductionRule>& a, const std::vector<DeductionRule>& b) {
  std::vector<std::string> ka, kb;
  for (const auto& r : a) ka.push_back(canonical_key(r));
  for (const auto& r : b) kb.push_back(canonical_key(r));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  ka.erase(std::unique(ka.begin(), ka.end()), ka.end());
  kb.erase(std::unique(kb.begin(), kb.end()), kb.end());
  return ka == kb;
}

}  // namespace fvsat
