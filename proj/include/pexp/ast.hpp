#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pexp/rational.hpp"

namespace pexp {

/// Correctness flavour: partial (wlp-style) or total (wp-style with
/// termination obligations).
enum class Mode { Partial, Total };

struct ArithExpr;
struct BoolExpr;
using ArithPtr = std::shared_ptr<const ArithExpr>;
using BoolPtr = std::shared_ptr<const BoolExpr>;

/// Arithmetic expression over program variables with exact rational
/// constants.  Indicator embeds a boolean test as a 0/1 value, which is
/// how integer-valued variant expressions such as [a != b] are written.
struct ArithExpr {
  enum class Kind { Constant, Variable, Negate, Add, Sub, Mul, Square, Indicator };

  Kind kind = Kind::Constant;
  Rational value;
  std::string var;
  ArithPtr lhs, rhs;
  BoolPtr cond;

  static ArithPtr constant(Rational q);
  static ArithPtr variable(std::string name);
  static ArithPtr negate(ArithPtr e);
  static ArithPtr add(ArithPtr a, ArithPtr b);
  static ArithPtr sub(ArithPtr a, ArithPtr b);
  static ArithPtr mul(ArithPtr a, ArithPtr b);
  static ArithPtr square(ArithPtr e);
  static ArithPtr indicator(BoolPtr b);
};

/// Boolean guard: comparisons of arithmetic expressions closed under
/// conjunction, disjunction and negation.
struct BoolExpr {
  enum class Kind { True, False, Compare, And, Or, Not };
  enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };

  Kind kind = Kind::True;
  Cmp cmp = Cmp::Eq;
  ArithPtr lhs_a, rhs_a;
  BoolPtr lhs, rhs;

  static BoolPtr truth(bool b);
  static BoolPtr compare(Cmp op, ArithPtr a, ArithPtr b);
  static BoolPtr conj(BoolPtr a, BoolPtr b);
  static BoolPtr disj(BoolPtr a, BoolPtr b);
  static BoolPtr negation(BoolPtr a);
};

/// Substitutes expression `e` for every occurrence of variable `x`.
[[nodiscard]] ArithPtr substitute(const ArithPtr &expr, const std::string &x, const ArithPtr &e);
[[nodiscard]] BoolPtr substitute(const BoolPtr &expr, const std::string &x, const ArithPtr &e);

struct Expectation;
using ExpPtr = std::shared_ptr<const Expectation>;

struct Prog;

/// Extra annotations carried by loops checked for total correctness:
/// termination predicate, integer-valued variant with inclusive bounds,
/// and the minimum probability of decreasing the variant.
struct TotalLoopAnnotation {
  BoolPtr terminates;
  ArithPtr variant;
  Rational lower;
  Rational upper;
  Rational eps;
};

/// One instruction of the language.  `Prog` is a flat, nonempty sequence
/// of instructions; sequencing is not itself an instruction.
struct Inst {
  enum class Kind { Skip, Assign, Cond, PChoice, While };

  Kind kind = Kind::Skip;

  // Assign
  std::string target;
  ArithPtr expr;

  // Cond / While guard
  BoolPtr guard;

  // Cond: branch1 = then, branch2 = else.  PChoice: branch1 = left
  // (taken with probability `prob`), branch2 = right.  While: branch1 = body.
  std::shared_ptr<Prog> branch1, branch2;
  Rational prob;

  // While
  ExpPtr invariant;
  std::optional<TotalLoopAnnotation> total;
};

struct Prog {
  std::vector<Inst> insts;

  [[nodiscard]] size_t size() const { return insts.size(); }
};

[[nodiscard]] Inst make_skip();
[[nodiscard]] Inst make_assign(std::string target, ArithPtr expr);
[[nodiscard]] Inst make_cond(BoolPtr guard, Prog then_branch, Prog else_branch);
[[nodiscard]] Inst make_pchoice(Prog left, Rational p, Prog right);
[[nodiscard]] Inst make_while(BoolPtr guard, ExpPtr invariant, Prog body,
                              std::optional<TotalLoopAnnotation> total = std::nullopt);

/// Structural equality (exact tree shape, not semantic equivalence).
[[nodiscard]] bool equal(const ArithPtr &a, const ArithPtr &b);
[[nodiscard]] bool equal(const BoolPtr &a, const BoolPtr &b);
[[nodiscard]] bool equal(const Inst &a, const Inst &b);
[[nodiscard]] bool equal(const Prog &a, const Prog &b);

} // namespace pexp
