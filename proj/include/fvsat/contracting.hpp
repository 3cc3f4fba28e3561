#pragma once

#include <string>
#include <vector>

#include "fvsat/deduction.hpp"
#include "fvsat/ordering.hpp"
#include "fvsat/signature.hpp"
#include "fvsat/term.hpp"

namespace fvsat {

/// An integer or +∞.
struct Measure {
  bool infinite = true;
  long value = 0;

  static Measure inf() { return Measure{}; }
  static Measure of(long v) { return Measure{false, v}; }

  bool positive() const { return infinite || value > 0; }
  friend bool operator<(const Measure& a, const Measure& b);
  friend bool operator==(const Measure& a, const Measure& b);
  friend bool operator!=(const Measure& a, const Measure& b) { return !(a == b); }
};

std::string to_string(const Measure& m);

/// +∞ when every member is a variable, otherwise the number of non-variable
/// members minus the number of their variables that are not members.
Measure delta(const TermSet& T);

/// All sets reachable by repeatedly replacing a non-variable member by its
/// arguments (including T itself).
std::vector<TermSet> decompositions(const TermSet& T);

/// Minimum of delta over all decompositions of T.
Measure mu_general(const TermSet& T);

/// Minimum of delta over all decompositions of all instances Tσ, where σ
/// ranges over the identity and compositions of unifiers of pairs of
/// distinct subterms.
Measure mu(const TermSet& T);

/// Union of the argument sets of the non-variable members.
TermSet strict_max_subterms(const TermSet& T);

/// Measure of a rule: μ of the strict maximal subterms of its non-variable
/// premises, together with its conclusion for increasing rules.
Measure mu_rule(const DeductionRule& r, RuleKind kind);

struct ContractingReport {
  bool contracting = true;
  std::vector<Measure> measures;  ///< parallel to the input rules
};

/// A system is contracting when every rule has a positive measure.
ContractingReport is_contracting(const std::vector<DeductionRule>& rules, const Signature& sig);

}  // namespace fvsat
