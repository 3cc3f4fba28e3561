#pragma once

#include "fvsat/deduction.hpp"
#include "fvsat/signature.hpp"
#include "fvsat/term.hpp"

namespace fvsat {

enum class OrderResult { Greater, Less, Equal, Incomparable };

/// Lexicographic path ordering induced by the signature's precedence.
/// Throws std::invalid_argument on undeclared symbols.
OrderResult lpo_compare(const Term& s, const Term& t, const Signature& sig);
bool lpo_greater(const Term& s, const Term& t, const Signature& sig);
/// s ⪰ t.
bool lpo_geq(const Term& s, const Term& t, const Signature& sig);

enum class RuleKind { Increasing, Decreasing };

/// Decreasing when some premise is ⪰ the conclusion.
RuleKind classify(const DeductionRule& r, const Signature& sig);

const char* to_string(OrderResult r);
const char* to_string(RuleKind k);

}  // namespace fvsat
