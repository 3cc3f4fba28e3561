#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fvsat/term.hpp"

namespace fvsat {

enum class SymbolKind {
  Function,      ///< declared in a theory signature
  FreeConstant,  ///< one of the infinitely many free constants
};

struct SymbolInfo {
  SymId id;
  std::size_t arity;
  SymbolKind kind;
};

/// Declared symbols with their arities and a total precedence.
///
/// The precedence is the declaration order unless reordered with
/// set_precedence; the first entry is the greatest. Free constants always
/// rank below every function symbol, in order of declaration.
class Signature {
 public:
  /// Declares a function symbol; redeclaring with the same arity is a no-op.
  /// Throws std::invalid_argument on an arity mismatch.
  void declare(const std::string& name, std::size_t arity);
  void declare_free_constant(const std::string& name);

  bool contains(SymId s) const { return info_.count(s) > 0; }
  bool contains(const std::string& name) const;
  const SymbolInfo& info(SymId s) const;
  std::optional<std::size_t> arity(const std::string& name) const;

  /// Function symbols in precedence order, greatest first.
  const std::vector<SymId>& functions() const { return functions_; }
  const std::vector<SymId>& free_constants() const { return free_; }

  /// Reorders function symbols; `order` must be a permutation of them.
  void set_precedence(const std::vector<SymId>& order);

  /// Precedence rank, smaller is greater. Throws for undeclared symbols.
  std::size_t rank(SymId s) const;

  /// Checks every symbol of `t` is declared with the right arity.
  void check_term(const Term& t) const;

 private:
  void renumber();

  std::map<SymId, SymbolInfo> info_;
  std::map<SymId, std::size_t> rank_;
  std::vector<SymId> functions_;
  std::vector<SymId> free_;
};

}  // namespace fvsat
