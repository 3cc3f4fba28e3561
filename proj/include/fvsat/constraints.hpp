#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fvsat/deduction.hpp"
#include "fvsat/ordering.hpp"
#include "fvsat/rewrite.hpp"
#include "fvsat/saturate.hpp"
#include "fvsat/term.hpp"
#include "fvsat/unify.hpp"

namespace fvsat {

/// E ⊳ t: the goal must be deducible from the knowledge set.
struct Constraint {
  std::vector<Term> knowledge;  ///< sorted, without duplicates
  Term goal;
};

/// Deduction constraints plus a unification system.
struct ConstraintSystem {
  std::vector<Constraint> constraints;
  std::vector<Equation> equations;

  VarSet variables() const;
  std::vector<Term> all_terms() const;
  bool ground() const;
};

/// Builds a knowledge vector in canonical (sorted, deduplicated) form.
std::vector<Term> make_knowledge(std::vector<Term> ts);

/// Knowledge sets grow monotonically and each knowledge set only mentions
/// variables of earlier goals. Returns a description of the first violation.
std::optional<std::string> check_wellformed(const ConstraintSystem& C);

std::string to_string(const Constraint& c);
std::string to_string(const ConstraintSystem& C);

/// Applies σ everywhere, re-canonicalizes knowledge and drops repeated
/// constraints.
ConstraintSystem apply(const ConstraintSystem& C, const Substitution& sigma);

/// Key identifying a system up to variable renaming.
std::string canonical_key(const ConstraintSystem& C);

// ---------------------------------------------------------------------------
// Preparation: from a system over the constructor rules modulo the rewrite
// system to finitely many systems over the saturated rules, empty theory.

struct PreparedBranch {
  Substitution theta;  ///< variant substitution on Var(C0)
  Substitution mu;     ///< mgu of the normalized equations
  ConstraintSystem system;
};

std::vector<PreparedBranch> prepare(const ConstraintSystem& C0, const RewriteSystem& R,
                                    std::size_t variant_depth = kDefaultVariantDepth);

// ---------------------------------------------------------------------------
// Transformation rules.

/// Saturated rules split by kind. Rules whose rhs is a premise never add a
/// term and are left out of the decreasing list.
struct SolverRules {
  std::vector<DeductionRule> increasing;
  std::vector<DeductionRule> decreasing;
  /// Nullary constructors (terms derivable from nothing).
  std::vector<Term> nullary;

  static SolverRules from(const SaturationResult& sat);
  static SolverRules from(const std::vector<DeductionRule>& rules, const Signature& sig);
  std::vector<DeductionRule> all() const;
};

enum class StepKind { Unif, Reduce1, Reduce2 };

struct Step {
  StepKind kind;
  std::size_t constraint;  ///< index of the transformed constraint
  std::string rule;        ///< printed rule, empty for Unif
  Substitution sigma;
  ConstraintSystem result;
};

/// Index of the leftmost constraint with a non-variable goal.
std::optional<std::size_t> leftmost_unsolved(const ConstraintSystem& C);

std::vector<Step> apply_unif(const ConstraintSystem& C, std::size_t i);
std::vector<Step> apply_reduce1(const ConstraintSystem& C, std::size_t i, const SolverRules& L);
std::vector<Step> apply_reduce2(const ConstraintSystem& C, std::size_t i, const SolverRules& L);

// ---------------------------------------------------------------------------
// Solving.

enum class SolveStatus { Sat, Fail, Unknown };

constexpr std::size_t kDefaultNodeBudget = 10000;

struct SolveOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  /// Check well-formedness and variable accounting after every step.
  bool check_invariants = true;
};

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t steps = 0;
  /// Steps that neither kept the variables without instantiating them nor
  /// strictly decreased their number.
  std::size_t accounting_violations = 0;
  std::size_t wellformed_violations = 0;
  std::string first_violation;
  /// Largest number of decreasing-rule guesses made for one constraint
  /// (subterm solver only) and the bound it was checked against.
  std::size_t max_guesses = 0;
  std::size_t guess_bound_violations = 0;
  /// Ground constraints decided directly instead of transformed.
  std::size_t ground_decisions = 0;
  /// Constraints dropped because an earlier one with the same goal and
  /// smaller knowledge implies them.
  std::size_t implied_dropped = 0;

  void merge(const SolveStats& o);
};

struct SolveResult {
  SolveStatus status = SolveStatus::Fail;
  /// Ground solution on the system's variables (Sat only).
  Substitution witness;
  std::vector<std::string> trace;
  SolveStats stats;
};

/// Searches transformation sequences from `C` (leftmost unsolved constraint
/// first) for a solved form, with a visited set over canonical systems.
SolveResult solve(const ConstraintSystem& C, const SolverRules& L, const SolveOptions& opt = {});

/// Ground solution for a system in solved form: each goal variable is bound
/// to the smallest ground term available from its knowledge set.
std::optional<Substitution> solved_form_witness(const ConstraintSystem& C,
                                                const std::vector<Term>& nullary);

// ---------------------------------------------------------------------------
// Ground deduction.

struct DerivationStep {
  DeductionRule rule;
  Substitution sigma;
  TermSet premises;
  Term conclusion;
};

using Derivation = std::vector<DerivationStep>;

struct GroundResult {
  bool valid = false;
  /// One derivation per constraint when valid.
  std::vector<Derivation> derivations;
  std::size_t nodes = 0;
};

/// Decides a ground system under the saturated rules, memoized on
/// (knowledge, goal). Valid systems come with derivations.
GroundResult decide_ground(const ConstraintSystem& G, const SolverRules& L);
bool ground_deducible(const std::vector<Term>& E, const Term& t, const SolverRules& L);

/// Replays `d` from `E`: every step must be an instance of a rule of `L`
/// with premises already known; the goal must be known at the end.
bool replay_derivation(const std::vector<Term>& E, const Term& goal, const Derivation& d,
                       const std::vector<DeductionRule>& L);

struct OracleOptions {
  /// When set, a conclusion larger than all of its premises is kept only if
  /// it is a subterm of the current knowledge or of the focus terms.
  std::optional<TermSet> focus;
  std::size_t max_terms = 500000;
};

/// Terms derivable from ground `E` in at most `depth` rounds of rule
/// application. ModuloTheory systems normalize every conclusion with `R`.
TermSet oracle_closure(const TermSet& E, const DeductionSystem& L, std::size_t depth,
                       const RewriteSystem* R = nullptr, const OracleOptions& opt = {});

// ---------------------------------------------------------------------------
// End to end.

struct SystemResult {
  SolveStatus status = SolveStatus::Fail;
  /// Ground, normalized solution on Var(C0) (Sat only), verified.
  Substitution witness;
  std::size_t branches = 0;
  SolveStats stats;
  std::vector<std::string> trace;
};

/// Checks a ground substitution against C0 (deduction under the saturated
/// rules on normal forms, equations modulo the rewrite system).
bool verify_witness(const ConstraintSystem& C0, const Substitution& sigma, const SolverRules& L,
                    const RewriteSystem& R);

/// Builds the C0 witness from a branch and a solution of its system.
Substitution lift_witness(const ConstraintSystem& C0, const PreparedBranch& b,
                          const Substitution& solution, const RewriteSystem& R);

SystemResult solve_system(const ConstraintSystem& C0, const RewriteSystem& R, const SolverRules& L,
                          const SolveOptions& opt = {});

const char* to_string(SolveStatus s);

}  // namespace fvsat
