#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fvsat/term.hpp"

namespace fvsat {

using Equation = std::pair<Term, Term>;

enum class UnifyFailure { None, Clash, Occurs };

/// Result of syntactic unification: a most general unifier or the reason
/// no unifier exists.
struct UnifyResult {
  std::optional<Substitution> mgu;
  UnifyFailure failure = UnifyFailure::None;

  explicit operator bool() const { return mgu.has_value(); }
};

/// Most general idempotent unifier of the equations.
///
/// When two variables are equated the one with the larger id is bound, so
/// freshly renamed rule variables never instantiate older variables.
UnifyResult mgu(const std::vector<Equation>& eqs);
UnifyResult mgu(const Term& s, const Term& t);

/// One-way matching: a substitution σ on Var(pattern) with patternσ = subject.
/// Variables of `subject` are treated as constants.
std::optional<Substitution> match(const Term& pattern, const Term& subject);
/// Partial matcher. Unlike Substitution it records bindings of a variable
/// to itself, which matters when pattern and subject share variables.
using Bindings = std::map<VarId, Term>;
/// Extends `m` so that pattern·m = subject. On failure `m` may hold partial
/// bindings; callers that backtrack should copy first.
bool match_into(const Term& pattern, const Term& subject, Bindings& m);

/// True when `t` is an instance of `pattern`.
bool is_instance(const Term& subject, const Term& pattern);
/// True when `a` and `b` are equal up to a variable renaming.
bool variant_of(const Term& a, const Term& b);

}  // namespace fvsat
