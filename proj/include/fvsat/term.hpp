#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fvsat {

using SymId = std::uint32_t;
using VarId = std::uint32_t;

/// Interns a function-symbol name; the same name always yields the same id.
SymId intern(std::string_view name);
const std::string& symbol_name(SymId id);

/// Immutable first-order term with structural equality.
///
/// A Term is a cheap handle around a shared node. Nodes cache their hash,
/// size and groundness, so equality and ordering short-circuit on mismatch.
class Term {
 public:
  Term() = default;

  static Term var(VarId id);
  static Term app(SymId sym, std::vector<Term> args = {});
  static Term app(std::string_view name, std::vector<Term> args = {});

  bool valid() const { return node_ != nullptr; }
  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_constant() const { return is_app() && node_->args.empty(); }
  bool ground() const { return node_->ground; }

  VarId var_id() const { return node_->id; }
  SymId sym() const { return node_->id; }
  const std::string& name() const { return symbol_name(node_->id); }
  std::size_t arity() const { return node_->args.size(); }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  std::size_t hash() const { return node_->hash; }
  /// Number of symbol and variable occurrences.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }

  bool same_node(const Term& o) const { return node_ == o.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  /// Total structural order, used for canonical sets.
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }
  static int compare(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var;
    bool ground;
    std::uint32_t id;
    std::size_t hash;
    std::size_t size;
    std::size_t depth;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TermSet = std::set<Term>;
using VarSet = std::set<VarId>;
using Position = std::vector<std::size_t>;

/// Returns a variable id never handed out before in this process.
VarId fresh_var_id();
Term fresh_var();

/// Subterms of `t` (including `t` unless `strict`), deduplicated.
TermSet subterms(const Term& t, bool strict = false);
TermSet subterms(const TermSet& ts, bool strict = false);

VarSet vars(const Term& t);
VarSet vars(const TermSet& ts);
void collect_vars(const Term& t, VarSet& out);
bool occurs(VarId v, const Term& t);

/// Positions of all subterms in pre-order; `nonvar_only` skips variables.
std::vector<Position> positions(const Term& t, bool nonvar_only = false);
const Term& at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& with);
/// True when `p` equals `q` or lies below it.
bool is_prefix(const Position& q, const Position& p);

/// Finite mapping from variables to terms. Bindings to the variable itself
/// are never stored.
class Substitution {
 public:
  using Map = std::map<VarId, Term>;

  Substitution() = default;
  explicit Substitution(Map m);

  void bind(VarId v, Term t);
  const Term* lookup(VarId v) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Map& map() const { return map_; }
  VarSet domain() const;

  /// Keeps only bindings whose variable is in `keep`.
  Substitution restrict(const VarSet& keep) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  Map map_;
};

Term apply(const Term& t, const Substitution& s);
TermSet apply(const TermSet& ts, const Substitution& s);
std::vector<Term> apply(const std::vector<Term>& ts, const Substitution& s);

/// The substitution that applies `first` then `second`.
Substitution compose(const Substitution& first, const Substitution& second);

/// |Var(ts)|.
std::size_t count_vars(const std::vector<Term>& ts);

/// Renames every variable of `ts` to a fresh one, returning the renaming.
Substitution renaming_for(const VarSet& vs);

/// Pretty printing. Variables print as `_N` unless a name map is given.
std::string to_string(const Term& t);
std::string to_string(const Term& t, const std::map<VarId, std::string>& names);
std::string to_string(const TermSet& ts);
std::string to_string(const Substitution& s);

/// Canonical variable names `X`, `Y`, `Z`, `X1`, ... assigned in order of
/// first occurrence across `ts`.
std::map<VarId, std::string> canonical_var_names(const std::vector<Term>& ts);

/// Replaces variables by consecutive ids 0,1,2... in order of first
/// occurrence; equal keys mean equal up to renaming.
std::string renaming_key(const std::vector<Term>& ts);

}  // namespace fvsat

template <>
struct std::hash<fvsat::Term> {
  std::size_t operator()(const fvsat::Term& t) const { return t.hash(); }
};
