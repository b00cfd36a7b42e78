#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/rational.hpp"

namespace pexp {

/// Finite set of values a variable may take, in declaration order.
struct VarDomain {
  std::string var;
  std::vector<Rational> values;
};

/// Program state: total map from declared variables to values.
using State = std::map<std::string, Rational>;

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The finite state space spanned by the declared variable domains.
/// Enumeration order is lexicographic in declaration order, which fixes
/// which entailment counterexample is reported first.
struct StateSpace {
  std::vector<VarDomain> domains;

  [[nodiscard]] size_t size() const;
  [[nodiscard]] const VarDomain *find(const std::string &var) const;
  [[nodiscard]] bool contains_value(const std::string &var, const Rational &value) const;

  /// All states, lexicographic in declaration order.
  [[nodiscard]] std::vector<State> enumerate() const;

  [[nodiscard]] size_t index_of(const State &s) const;
};

[[nodiscard]] Rational eval_arith(const ArithPtr &expr, const State &s);
[[nodiscard]] bool eval_bool(const BoolPtr &expr, const State &s);

/// Returns s[x := value]; throws EvalError if x is not declared.
[[nodiscard]] State state_update(const State &s, const std::string &x, const Rational &value);

[[nodiscard]] std::string to_string(const State &s);

} // namespace pexp
