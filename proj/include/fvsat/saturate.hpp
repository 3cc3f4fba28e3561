#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fvsat/deduction.hpp"
#include "fvsat/ordering.hpp"
#include "fvsat/rewrite.hpp"
#include "fvsat/signature.hpp"
#include "fvsat/unify.hpp"
#include "fvsat/variants.hpp"

namespace fvsat {

struct SaturationConfig {
  /// Leave rules whose rhs is a premise out of the result. They still take
  /// part in closure, so rules derived through them are kept.
  bool delete_trivial = false;
  /// Drop new increasing rules derivable in at most this many steps from
  /// the rules already present; 0 disables the check.
  std::size_t redundancy_steps = 0;
  std::size_t max_rules = 2000;
  /// Maximal closure generation; step-one rules have generation 0.
  std::size_t max_rounds = 30;
  std::size_t variant_depth = kDefaultVariantDepth;
};

enum class SaturationStatus { Converged, Diverged };

struct SaturatedRule {
  DeductionRule rule;
  RuleKind kind;
  std::size_t generation;
  /// Indices of the parents within the result, empty for step-one rules.
  std::vector<std::size_t> parents;
};

struct SaturationResult {
  SaturationStatus status = SaturationStatus::Converged;
  std::vector<SaturatedRule> rules;
  /// On divergence: the chain of rules leading to the bound, oldest first.
  std::vector<DeductionRule> offending;
  std::string reason;
  std::size_t dropped_trivial = 0;
  std::size_t dropped_redundant = 0;
  std::size_t dropped_duplicate = 0;

  DeductionSystem system() const;
  std::vector<DeductionRule> plain_rules() const;
};

/// Removes variable premises that occur neither in another premise nor in rhs.
DeductionRule simplify(const DeductionRule& r);

/// Step one: for every constructor rule and each variant θ of f(x1..xn),
/// the rule x1θ, ..., xnθ ↠ ⌊f(x1..xn)θ⌋ (simplified, identities dropped).
std::vector<DeductionRule> variant_rules(const std::vector<DeductionRule>& L0,
                                         const RewriteSystem& R,
                                         std::size_t depth_bound = kDefaultVariantDepth);

/// Children of one closure pair: `inc` (increasing) feeds its conclusion
/// into each non-variable premise of `other` it unifies with.
std::vector<DeductionRule> closure_children(const DeductionRule& inc, const DeductionRule& other);

/// One round of closure over all pairs of `L`, simplified, identities and
/// (optionally) trivial rules dropped, duplicates of `L` removed.
std::vector<DeductionRule> closure_step(const std::vector<DeductionRule>& L,
                                        const Signature& sig, bool delete_trivial = false);

/// Freezes the variables of `r` as fresh constants and searches for a
/// derivation of its conclusion from its premises in at most `k` steps
/// using the rules of `L` other than `r`.
bool is_redundant(const DeductionRule& r, const std::vector<DeductionRule>& L, std::size_t k);

SaturationResult saturate(const std::vector<DeductionRule>& L0, const RewriteSystem& R,
                          const Signature& sig, const SaturationConfig& cfg = {});

/// Ground instances of `r` whose premises all lie in `K` (ground).
/// When `target` is given only instances concluding `target` are produced.
/// The callback receives the matcher and returns true to stop.
void for_each_instance(const DeductionRule& r, const std::vector<Term>& K, const Term* target,
                       const std::function<bool(const Bindings&)>& fn);

}  // namespace fvsat
