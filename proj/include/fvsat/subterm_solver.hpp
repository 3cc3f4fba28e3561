#pragma once

#include "fvsat/constraints.hpp"
#include "fvsat/saturate.hpp"

namespace fvsat {

/// Saturation for subterm convergent theories (std::invalid_argument for
/// any other rewrite system). Trivial rules are left out and every rule
/// beyond the constructors must conclude a strict subterm of one of its
/// premises (std::logic_error otherwise).
SaturationResult saturate_subterm(const std::vector<DeductionRule>& L0, const RewriteSystem& R,
                                  const Signature& sig, SaturationConfig cfg = {});

/// Terminating solver for systems over a subterm saturation. Each untagged
/// constraint receives at most |Sub(E) \ Var(E)| decreasing-rule
/// applications before it is handed to increasing rules only. Never
/// returns Unknown.
SolveResult solve_subterm(const ConstraintSystem& C, const SolverRules& L);

/// End-to-end variant of solve_system using solve_subterm.
SystemResult solve_system_subterm(const ConstraintSystem& C0, const RewriteSystem& R,
                                  const SolverRules& L);

}  // namespace fvsat
