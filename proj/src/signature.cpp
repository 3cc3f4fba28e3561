#include "fvsat/signature.hpp"

#include <algorithm>
#include <stdexcept>

namespace fvsat {

void Signature::declare(const std::string& name, std::size_t arity) {
  SymId id = intern(name);
  auto it = info_.find(id);
  if (it != info_.end()) {
    if (it->second.arity != arity || it->second.kind != SymbolKind::Function)
      throw std::invalid_argument("symbol '" + name + "' redeclared with a different arity");
    return;
  }
  info_.emplace(id, SymbolInfo{id, arity, SymbolKind::Function});
  functions_.push_back(id);
  renumber();
}

void Signature::declare_free_constant(const std::string& name) {
  SymId id = intern(name);
  auto it = info_.find(id);
  if (it != info_.end()) {
    if (it->second.arity != 0)
      throw std::invalid_argument("symbol '" + name + "' is not a constant");
    return;
  }
  info_.emplace(id, SymbolInfo{id, 0, SymbolKind::FreeConstant});
  free_.push_back(id);
  renumber();
}

bool Signature::contains(const std::string& name) const { return contains(intern(name)); }

const SymbolInfo& Signature::info(SymId s) const {
  auto it = info_.find(s);
  if (it == info_.end()) throw std::invalid_argument("undeclared symbol '" + symbol_name(s) + "'");
  return it->second;
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
  auto it = info_.find(intern(name));
  if (it == info_.end()) return std::nullopt;
  return it->second.arity;
}

void Signature::set_precedence(const std::vector<SymId>& order) {
  std::vector<SymId> a = order, b = functions_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("precedence must list every function symbol exactly once");
  functions_ = order;
  renumber();
}

std::size_t Signature::rank(SymId s) const {
  auto it = rank_.find(s);
  if (it == rank_.end()) throw std::invalid_argument("undeclared symbol '" + symbol_name(s) + "'");
  return it->second;
}

void Signature::check_term(const Term& t) const {
  if (t.is_var()) return;
  const auto& i = info(t.sym());
  if (i.arity != t.arity())
    throw std::invalid_argument("symbol '" + t.name() + "' used with arity " +
                                std::to_string(t.arity()) + ", declared " +
                                std::to_string(i.arity));
  for (const auto& a : t.args()) check_term(a);
}

void Signature::renumber() {
  rank_.clear();
  std::size_t r = 0;
  for (auto s : functions_) rank_[s] = r++;
  for (auto s : free_) rank_[s] = r++;
}

}  // namespace fvsat
