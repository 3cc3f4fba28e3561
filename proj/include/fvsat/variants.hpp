#pragma once

#include <stdexcept>
#include <vector>

#include "fvsat/rewrite.hpp"
#include "fvsat/term.hpp"

namespace fvsat {

/// A variant of t: a substitution θ on Var(t) paired with ⌊tθ⌋.
struct Variant {
  Substitution theta;
  Term reduct;
};

/// Thrown when basic narrowing has not terminated within the depth bound,
/// i.e. the theory does not have finite variants for the input.
class FvpViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultVariantDepth = 10;

/// Complete set of variants of `t`, computed by basic narrowing and pruned
/// of variants that are instances of others. The identity variant comes
/// first.
std::vector<Variant> variants(const Term& t, const RewriteSystem& R,
                              std::size_t depth_bound = kDefaultVariantDepth);

struct TupleVariant {
  Substitution theta;
  std::vector<Term> reducts;
};

/// Variants of a list of terms computed jointly (as one tuple).
std::vector<TupleVariant> variants_tuple(const std::vector<Term>& ts, const RewriteSystem& R,
                                         std::size_t depth_bound = kDefaultVariantDepth);

}  // namespace fvsat
