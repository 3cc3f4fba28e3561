#include "fvsat/term.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fvsat {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::unordered_map<std::string, SymId> ids;
  std::deque<std::string> names;  // deque keeps references stable
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::atomic<VarId> next_var{1};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

SymId intern(std::string_view name) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return it->second;
  auto id = static_cast<SymId>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(std::string(name), id);
  return id;
}

const std::string& symbol_name(SymId id) {
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(id);
}

Term Term::var(VarId id) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->ground = false;
  n->id = id;
  n->hash = mix(0x51ed270b, id);
  n->size = 1;
  n->depth = 0;
  return Term(std::move(n));
}

Term Term::app(SymId sym, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->is_var = false;
  n->ground = true;
  n->id = sym;
  std::size_t h = mix(0x2545f491, sym);
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
    depth = std::max(depth, a.depth() + 1);
    n->ground = n->ground && a.ground();
  }
  n->hash = h;
  n->size = size;
  n->depth = depth;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::app(std::string_view name, std::vector<Term> args) {
  return app(intern(name), std::move(args));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  if (a.node_->is_var != b.node_->is_var || a.node_->id != b.node_->id) return false;
  const auto& x = a.node_->args;
  const auto& y = b.node_->args;
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] == y[i])) return false;
  return true;
}

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  // Variables first, then by symbol name so printed sets read naturally.
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) return a.var_id() < b.var_id() ? -1 : (a.var_id() > b.var_id() ? 1 : 0);
  if (a.sym() != b.sym()) {
    int c = a.name().compare(b.name());
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    int c = compare(a.arg(i), b.arg(i));
    if (c != 0) return c;
  }
  return 0;
}

VarId fresh_var_id() { return next_var.fetch_add(1); }
Term fresh_var() { return Term::var(fresh_var_id()); }

namespace {
void collect_subterms(const Term& t, TermSet& out) {
  if (!out.insert(t).second) return;
  if (t.is_app())
    for (const auto& a : t.args()) collect_subterms(a, out);
}
}  // namespace

TermSet subterms(const Term& t, bool strict) {
  TermSet out;
  if (strict) {
    if (t.is_app())
      for (const auto& a : t.args()) collect_subterms(a, out);
  } else {
    collect_subterms(t, out);
  }
  return out;
}

TermSet subterms(const TermSet& ts, bool strict) {
  TermSet out;
  for (const auto& t : ts) {
    if (strict) {
      if (t.is_app())
        for (const auto& a : t.args()) collect_subterms(a, out);
    } else {
      collect_subterms(t, out);
    }
  }
  return out;
}

void collect_vars(const Term& t, VarSet& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    out.insert(t.var_id());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

VarSet vars(const Term& t) {
  VarSet out;
  collect_vars(t, out);
  return out;
}

VarSet vars(const TermSet& ts) {
  VarSet out;
  for (const auto& t : ts) collect_vars(t, out);
  return out;
}

bool occurs(VarId v, const Term& t) {
  if (t.ground()) return false;
  if (t.is_var()) return t.var_id() == v;
  for (const auto& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

namespace {
void collect_positions(const Term& t, Position& cur, bool nonvar_only, std::vector<Position>& out) {
  if (t.is_var()) {
    if (!nonvar_only) out.push_back(cur);
    return;
  }
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(i);
    collect_positions(t.arg(i), cur, nonvar_only, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Position> positions(const Term& t, bool nonvar_only) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, nonvar_only, out);
  return out;
}

const Term& at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p) cur = &cur->arg(i);
  return *cur;
}

namespace {
Term replace_from(const Term& t, const Position& p, std::size_t k, const Term& with) {
  if (k == p.size()) return with;
  std::vector<Term> args = t.args();
  args.at(p[k]) = replace_from(t.arg(p[k]), p, k + 1, with);
  return Term::app(t.sym(), std::move(args));
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& with) {
  return replace_from(t, p, 0, with);
}

bool is_prefix(const Position& q, const Position& p) {
  return q.size() <= p.size() && std::equal(q.begin(), q.end(), p.begin());
}

Substitution::Substitution(Map m) {
  for (auto& [v, t] : m) bind(v, t);
}

void Substitution::bind(VarId v, Term t) {
  if (t.is_var() && t.var_id() == v) {
    map_.erase(v);
    return;
  }
  map_[v] = std::move(t);
}

const Term* Substitution::lookup(VarId v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

VarSet Substitution::domain() const {
  VarSet d;
  for (const auto& [v, t] : map_) d.insert(v);
  return d;
}

Substitution Substitution::restrict(const VarSet& keep) const {
  Substitution out;
  for (const auto& [v, t] : map_)
    if (keep.count(v)) out.map_.emplace(v, t);
  return out;
}

bool operator==(const Substitution& a, const Substitution& b) { return a.map_ == b.map_; }

Term apply(const Term& t, const Substitution& s) {
  if (t.ground() || s.empty()) return t;
  if (t.is_var()) {
    const Term* b = s.lookup(t.var_id());
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(fvsat::apply(a, s));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::app(t.sym(), std::move(args)) : t;
}

TermSet apply(const TermSet& ts, const Substitution& s) {
  TermSet out;
  for (const auto& t : ts) out.insert(fvsat::apply(t, s));
  return out;
}

std::vector<Term> apply(const std::vector<Term>& ts, const Substitution& s) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(fvsat::apply(t, s));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, t] : first.map()) out.bind(v, fvsat::apply(t, second));
  for (const auto& [v, t] : second.map())
    if (!first.lookup(v)) out.bind(v, t);
  return out;
}

std::size_t count_vars(const std::vector<Term>& ts) {
  VarSet vs;
  for (const auto& t : ts) collect_vars(t, vs);
  return vs.size();
}

Substitution renaming_for(const VarSet& vs) {
  Substitution r;
  for (auto v : vs) r.bind(v, fresh_var());
  return r;
}

namespace {
void print(std::ostream& os, const Term& t, const std::map<VarId, std::string>* names) {
  if (t.is_var()) {
    if (names) {
      auto it = names->find(t.var_id());
      if (it != names->end()) {
        os << it->second;
        return;
      }
    }
    os << "_" << t.var_id();
    return;
  }
  os << t.name();
  if (t.arity() == 0) return;
  os << "(";
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ",";
    print(os, t.arg(i), names);
  }
  os << ")";
}
}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print(os, t, nullptr);
  return os.str();
}

std::string to_string(const Term& t, const std::map<VarId, std::string>& names) {
  std::ostringstream os;
  print(os, t, &names);
  return os.str();
}

std::string to_string(const TermSet& ts) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& t : ts) {
    if (!first) os << ", ";
    first = false;
    print(os, t, nullptr);
  }
  os << "}";
  return os.str();
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [v, t] : s.map()) {
    if (!first) os << ", ";
    first = false;
    os << "_" << v << " -> ";
    print(os, t, nullptr);
  }
  os << "}";
  return os.str();
}

namespace {
void first_occurrence(const Term& t, std::vector<VarId>& order, VarSet& seen) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (seen.insert(t.var_id()).second) order.push_back(t.var_id());
    return;
  }
  for (const auto& a : t.args()) first_occurrence(a, order, seen);
}

std::string nth_var_name(std::size_t i) {
  static const char* base[] = {"X", "Y", "Z", "U", "V", "W"};
  std::string n = base[i % 6];
  if (i >= 6) n += std::to_string(i / 6);
  return n;
}
}  // namespace

std::map<VarId, std::string> canonical_var_names(const std::vector<Term>& ts) {
  std::vector<VarId> order;
  VarSet seen;
  for (const auto& t : ts) first_occurrence(t, order, seen);
  std::map<VarId, std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) names[order[i]] = nth_var_name(i);
  return names;
}

std::string renaming_key(const std::vector<Term>& ts) {
  std::vector<VarId> order;
  VarSet seen;
  for (const auto& t : ts) first_occurrence(t, order, seen);
  std::map<VarId, std::string> names;
  for (std::size_t i = 0; i < order.size(); ++i) names[order[i]] = "?" + std::to_string(i);
  std::ostringstream os;
  for (const auto& t : ts) {
    print(os, t, &names);
    os << ";";
  }
  return os.str();
}

}  // namespace fvsat
