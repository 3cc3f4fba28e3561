#include "fvsat/ordering.hpp"

namespace fvsat {

namespace {

bool greater(const Term& s, const Term& t, const Signature& sig);

bool geq(const Term& s, const Term& t, const Signature& sig) {
  return s == t || greater(s, t, sig);
}

bool greater(const Term& s, const Term& t, const Signature& sig) {
  if (s.is_var()) return false;
  if (t.is_var()) return occurs(t.var_id(), s);
  for (const auto& si : s.args())
    if (geq(si, t, sig)) return true;
  auto rs = sig.rank(s.sym());
  auto rt = sig.rank(t.sym());
  if (rs < rt) {
    for (const auto& tj : t.args())
      if (!greater(s, tj, sig)) return false;
    return true;
  }
  if (rs > rt) return false;
  // Same head: lexicographic comparison of arguments.
  std::size_t n = std::min(s.arity(), t.arity());
  for (std::size_t i = 0; i < n; ++i) {
    if (s.arg(i) == t.arg(i)) continue;
    if (!greater(s.arg(i), t.arg(i), sig)) return false;
    for (std::size_t j = i + 1; j < t.arity(); ++j)
      if (!greater(s, t.arg(j), sig)) return false;
    return true;
  }
  return s.arity() > t.arity();
}

void check_declared(const Term& t, const Signature& sig) {
  if (t.is_var()) return;
  sig.rank(t.sym());
  for (const auto& a : t.args()) check_declared(a, sig);
}

}  // namespace

OrderResult lpo_compare(const Term& s, const Term& t, const Signature& sig) {
  check_declared(s, sig);
  check_declared(t, sig);
  if (s == t) return OrderResult::Equal;
  if (greater(s, t, sig)) return OrderResult::Greater;
  if (greater(t, s, sig)) return OrderResult::Less;
  return OrderResult::Incomparable;
}

bool lpo_greater(const Term& s, const Term& t, const Signature& sig) {
  return lpo_compare(s, t, sig) == OrderResult::Greater;
}

bool lpo_geq(const Term& s, const Term& t, const Signature& sig) {
  auto r = lpo_compare(s, t, sig);
  return r == OrderResult::Greater || r == OrderResult::Equal;
}

RuleKind classify(const DeductionRule& r, const Signature& sig) {
  for (const auto& s : r.lhs)
    if (lpo_geq(s, r.rhs, sig)) return RuleKind::Decreasing;
  return RuleKind::Increasing;
}

const char* to_string(OrderResult r) {
  switch (r) {
    case OrderResult::Greater: return "greater";
    case OrderResult::Less: return "less";
    case OrderResult::Equal: return "equal";
    case OrderResult::Incomparable: return "incomparable";
  }
  return "?";
}

const char* to_string(RuleKind k) {
  return k == RuleKind::Increasing ? "increasing" : "decreasing";
}

}  // namespace fvsat
