#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/state.hpp"

namespace pexp {

/// Expectation: a syntactic map from states to [0,1].  Built from rational
/// constants, indicator brackets over guards, finite sums, scaling by a
/// rational and pointwise products.
struct Expectation {
  enum class Kind { Constant, Indicator, Sum, Scale, Product };

  Kind kind = Kind::Constant;
  Rational value;           // Constant, Scale factor
  BoolPtr cond;             // Indicator
  std::vector<ExpPtr> terms; // Sum
  ExpPtr lhs, rhs;          // Product; Scale uses lhs only

  static ExpPtr constant(Rational q);
  static ExpPtr indicator(BoolPtr b);
  static ExpPtr sum(std::vector<ExpPtr> terms);
  static ExpPtr scale(Rational q, ExpPtr e);
  static ExpPtr product(ExpPtr a, ExpPtr b);
};

/// [B] as an expectation.
[[nodiscard]] ExpPtr iverson(BoolPtr b);

/// e[x/a]: substitution pushed eagerly into every guard and arithmetic leaf.
[[nodiscard]] ExpPtr substitute(const ExpPtr &e, const std::string &x, const ArithPtr &a);

/// Thrown when an expectation evaluates outside [0,1].
class RangeError : public std::runtime_error {
public:
  RangeError(std::string message, State state, Rational value);
  State state;
  Rational value;
};

/// Evaluates at a state; throws RangeError if the result leaves [0,1].
[[nodiscard]] Rational evaluate(const ExpPtr &e, const State &s);

/// An auxiliary logical variable quantified over a finite range of values
/// during entailment (used for snapshot variables in variant conditions).
struct LogicalBinding {
  std::string var;
  std::vector<Rational> values;
};

struct EntailmentWitness {
  State state; // includes values for logical bindings
  Rational lhs;
  Rational rhs;
};

struct EntailmentResult {
  enum class Verdict { Valid, Invalid, RangeViolation };
  Verdict verdict = Verdict::Valid;
  std::optional<EntailmentWitness> witness; // first counterexample / violation

  [[nodiscard]] bool valid() const { return verdict == Verdict::Valid; }
};

/// Decides f ⇒ g pointwise over the full state space (extended by the
/// logical bindings).  States are visited lexicographically in declaration
/// order, bindings innermost, so the reported witness is deterministic.
[[nodiscard]] EntailmentResult entails(const ExpPtr &f, const ExpPtr &g,
                                       const StateSpace &space,
                                       const std::vector<LogicalBinding> &bindings = {});

/// Light structural simplification: drops zero terms, collapses scaling by
/// 0/1 and products with constant 1, folds constants.
[[nodiscard]] ExpPtr simplify(const ExpPtr &e);

[[nodiscard]] bool equal(const ExpPtr &a, const ExpPtr &b);

} // namespace pexp
