#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fvsat/constraints.hpp"
#include "fvsat/deduction.hpp"
#include "fvsat/rewrite.hpp"
#include "fvsat/signature.hpp"

namespace fvsat {

/// A theory: signature with precedence, convergent rewrite system,
/// constructor deduction rules, and optionally a saturated system.
struct TheoryBundle {
  std::string name;
  Signature sig;
  RewriteSystem R;
  std::vector<DeductionRule> L0;
  std::vector<DeductionRule> saturated;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Parses the theory text format:
///
///     theory NAME
///     signature      f/2 g/1 a/0
///     constants      c d            (free constants)
///     precedence     f > g > a      (greatest first; default: declaration order)
///     rules          f(X,a) -> X
///     deduction      X, Y => f(X,Y)
///     saturated      f(X,Y), Y => X
///
/// Identifiers starting with an uppercase letter are variables. Section
/// contents may span several lines; `#` starts a comment.
TheoryBundle parse_theory(const std::string& text);

/// Inverse of parse_theory up to variable names.
std::string serialize(const TheoryBundle& b);

/// Same signature, precedence, and rules up to renaming.
bool equivalent(const TheoryBundle& a, const TheoryBundle& b);

/// Names of the built-in theories.
std::vector<std::string> builtin_names();
/// One of "dy", "dsks", "blind", "twostack". Throws std::invalid_argument.
TheoryBundle builtin(const std::string& name);

/// Parses a term; unknown nullary identifiers become free constants of `sig`
/// when `declare_constants` is set. Variable names map through `vars`.
Term parse_term(const std::string& text, Signature& sig, std::map<std::string, VarId>& vars,
                bool declare_constants = true);
/// Comma-separated terms, possibly empty.
std::vector<Term> parse_terms(const std::string& text, Signature& sig,
                              std::map<std::string, VarId>& vars, bool declare_constants = true);

/// Parses constraint statements, one or more per line separated by `;`:
///
///     knows t1, t2; deduce T    (knows sets the knowledge for later deduce)
///     deduce T
///     eq s = t
///
/// The first deduce before any knows has empty knowledge. The result is
/// checked for well-formedness. Unknown nullary identifiers become free
/// constants.
struct ParsedConstraints {
  ConstraintSystem system;
  std::map<std::string, VarId> variables;
};
ParsedConstraints parse_constraints(const std::string& text, Signature& sig);

std::string serialize(const ConstraintSystem& C);

}  // namespace fvsat
