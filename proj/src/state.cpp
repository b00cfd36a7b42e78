#include "pexp/state.hpp"

#include <sstream>

namespace pexp {

size_t StateSpace::size() const {
  size_t n = 1;
  for (const auto &d : domains)
    n *= d.values.size();
  return n;
}

const VarDomain *StateSpace::find(const std::string &var) const {
  for (const auto &d : domains)
    if (d.var == var)
      return &d;
  return nullptr;
}

bool StateSpace::contains_value(const std::string &var, const Rational &value) const {
  const VarDomain *d = find(var);
  if (!d)
    return false;
  for (const auto &v : d->values)
    if (v == value)
      return true;
  return false;
}

std::vector<State> StateSpace::enumerate() const {
  std::vector<State> out;
  if (domains.empty()) {
    out.emplace_back();
    return out;
  }
  std::vector<size_t> idx(domains.size(), 0);
  for (;;) {
    State s;
    for (size_t i = 0; i < domains.size(); ++i)
      s[domains[i].var] = domains[i].values[idx[i]];
    out.push_back(std::move(s));
    size_t i = domains.size();
    while (i > 0) {
      --i;
      if (++idx[i] < domains[i].values.size())
        break;
      idx[i] = 0;
      if (i == 0)
        return out;
    }
  }
}

size_t StateSpace::index_of(const State &s) const {
  size_t index = 0;
  for (const auto &d : domains) {
    auto it = s.find(d.var);
    if (it == s.end())
      throw EvalError("state is missing variable '" + d.var + "'");
    size_t pos = d.values.size();
    for (size_t i = 0; i < d.values.size(); ++i)
      if (d.values[i] == it->second) {
        pos = i;
        break;
      }
    if (pos == d.values.size())
      throw EvalError("value " + to_string(it->second) + " of variable '" + d.var +
                      "' is outside its declared domain");
    index = index * d.values.size() + pos;
  }
  return index;
}

Rational eval_arith(const ArithPtr &expr, const State &s) {
  switch (expr->kind) {
  case ArithExpr::Kind::Constant:
    return expr->value;
  case ArithExpr::Kind::Variable: {
    auto it = s.find(expr->var);
    if (it == s.end())
      throw EvalError("undeclared variable '" + expr->var + "'");
    return it->second;
  }
  case ArithExpr::Kind::Negate:
    return -eval_arith(expr->lhs, s);
  case ArithExpr::Kind::Add:
    return eval_arith(expr->lhs, s) + eval_arith(expr->rhs, s);
  case ArithExpr::Kind::Sub:
    return eval_arith(expr->lhs, s) - eval_arith(expr->rhs, s);
  case ArithExpr::Kind::Mul:
    return eval_arith(expr->lhs, s) * eval_arith(expr->rhs, s);
  case ArithExpr::Kind::Square: {
    Rational v = eval_arith(expr->lhs, s);
    return v * v;
  }
  case ArithExpr::Kind::Indicator:
    return eval_bool(expr->cond, s) ? 1 : 0;
  }
  throw EvalError("malformed arithmetic expression");
}

bool eval_bool(const BoolPtr &expr, const State &s) {
  switch (expr->kind) {
  case BoolExpr::Kind::True:
    return true;
  case BoolExpr::Kind::False:
    return false;
  case BoolExpr::Kind::Compare: {
    Rational a = eval_arith(expr->lhs_a, s);
    Rational b = eval_arith(expr->rhs_a, s);
    switch (expr->cmp) {
    case BoolExpr::Cmp::Eq:
      return a == b;
    case BoolExpr::Cmp::Ne:
      return a != b;
    case BoolExpr::Cmp::Lt:
      return a < b;
    case BoolExpr::Cmp::Le:
      return a <= b;
    case BoolExpr::Cmp::Gt:
      return a > b;
    case BoolExpr::Cmp::Ge:
      return a >= b;
    }
    return false;
  }
  case BoolExpr::Kind::And:
    return eval_bool(expr->lhs, s) && eval_bool(expr->rhs, s);
  case BoolExpr::Kind::Or:
    return eval_bool(expr->lhs, s) || eval_bool(expr->rhs, s);
  case BoolExpr::Kind::Not:
    return !eval_bool(expr->lhs, s);
  }
  throw EvalError("malformed boolean expression");
}

State state_update(const State &s, const std::string &x, const Rational &value) {
  auto it = s.find(x);
  if (it == s.end())
    throw EvalError("assignment to undeclared variable '" + x + "'");
  State out = s;
  out[x] = value;
  return out;
}

std::string to_string(const State &s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto &[var, value] : s) {
    if (!first)
      os << ", ";
    first = false;
    os << var << "=" << to_string(value);
  }
  os << "}";
  return os.str();
}

} // namespace pexp
