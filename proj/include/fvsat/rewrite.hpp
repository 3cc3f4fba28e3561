#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fvsat/signature.hpp"
#include "fvsat/term.hpp"

namespace fvsat {

struct RewriteRule {
  Term lhs;
  Term rhs;
};

struct RewriteSystem {
  std::vector<RewriteRule> rules;
};

/// Thrown when normalization exceeds its step budget.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultStepBudget = 100000;

enum class Strategy { LeftmostInnermost, LeftmostOutermost };

/// Normal form of `t`. Throws DivergenceError past `step_budget` rewrites.
Term normalize(const Term& t, const RewriteSystem& R,
               std::size_t step_budget = kDefaultStepBudget,
               Strategy strategy = Strategy::LeftmostInnermost);

bool is_normal(const Term& t, const RewriteSystem& R);

/// Equality modulo the equational theory of a convergent system.
bool eq_mod_H(const Term& s, const Term& t, const RewriteSystem& R);

/// Every rule satisfies lhs ≻ rhs in the LPO of `sig`.
bool check_lpo_oriented(const RewriteSystem& R, const Signature& sig);

/// Every rule's rhs is a strict subterm of its lhs. Convergence itself is
/// assumed; see critical_pairs_joinable.
bool check_subterm_convergent(const RewriteSystem& R);

struct CriticalPair {
  std::size_t outer_rule;
  std::size_t inner_rule;
  Position position;
  Term left;
  Term right;
};

/// Critical pairs from overlapping rule `inner` into a non-variable position
/// of rule `outer` (both renamed apart), excluding trivial root self-overlaps.
std::vector<CriticalPair> critical_pairs(const RewriteSystem& R);

/// All critical pairs have equal normal forms.
bool critical_pairs_joinable(const RewriteSystem& R, std::size_t step_budget = kDefaultStepBudget);

std::string to_string(const RewriteRule& r);

}  // namespace fvsat
