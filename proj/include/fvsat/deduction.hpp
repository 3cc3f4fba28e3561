#pragma once

#include <string>
#include <vector>

#include "fvsat/term.hpp"

namespace fvsat {

/// A deduction rule `t1, ..., tn ↠ r`: from every premise in `lhs`, derive `rhs`.
struct DeductionRule {
  TermSet lhs;
  Term rhs;
  /// Free-form provenance, e.g. "constructor", "variant", "closure".
  std::string origin;

  /// Premises that are variables.
  TermSet var_premises() const;
  /// Premises that are not variables.
  TermSet nonvar_premises() const;
  VarSet variables() const;

  /// rhs occurs among the premises, so the rule never adds a term.
  bool rhs_in_lhs() const { return lhs.count(rhs) > 0; }
  /// The rule is `x ↠ x`.
  bool is_identity() const { return lhs.size() == 1 && rhs_in_lhs(); }

  /// Same rule with all variables renamed to fresh ones.
  DeductionRule renamed() const;
};

/// Key identifying a rule up to variable renaming, treating lhs as a set.
std::string canonical_key(const DeductionRule& r);

/// Prints the rule with canonical variable names, premises in canonical order.
std::string to_string(const DeductionRule& r);

/// `x1..xn ↠ f(x1..xn)` with fresh variables.
DeductionRule constructor_rule(SymId f, std::size_t arity);

/// Which deduction relation a system is interpreted in.
enum class DeductionMode {
  ModuloTheory,  ///< conclusions are normalized by the rewrite system
  EmptyTheory,   ///< purely syntactic
};

struct DeductionSystem {
  std::vector<DeductionRule> rules;
  DeductionMode mode = DeductionMode::EmptyTheory;
};

/// Two systems contain the same rules up to renaming, ignoring order.
bool same_rules(const std::vector<DeductionRule>& a, const std::vector<DeductionRule>& b);

}  // namespace fvsat
