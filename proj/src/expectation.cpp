#include "pexp/expectation.hpp"

namespace pexp {

namespace {

ExpPtr make_exp(Expectation node) {
  return std::make_shared<const Expectation>(std::move(node));
}

} // namespace

ExpPtr Expectation::constant(Rational q) {
  Expectation e;
  e.kind = Kind::Constant;
  e.value = std::move(q);
  return make_exp(std::move(e));
}

ExpPtr Expectation::indicator(BoolPtr b) {
  Expectation e;
  e.kind = Kind::Indicator;
  e.cond = std::move(b);
  return make_exp(std::move(e));
}

ExpPtr Expectation::sum(std::vector<ExpPtr> terms) {
  if (terms.size() == 1)
    return terms.front();
  Expectation e;
  e.kind = Kind::Sum;
  e.terms = std::move(terms);
  return make_exp(std::move(e));
}

ExpPtr Expectation::scale(Rational q, ExpPtr body) {
  Expectation e;
  e.kind = Kind::Scale;
  e.value = std::move(q);
  e.lhs = std::move(body);
  return make_exp(std::move(e));
}

ExpPtr Expectation::product(ExpPtr a, ExpPtr b) {
  Expectation e;
  e.kind = Kind::Product;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_exp(std::move(e));
}

ExpPtr iverson(BoolPtr b) {
  return Expectation::indicator(std::move(b));
}

ExpPtr substitute(const ExpPtr &e, const std::string &x, const ArithPtr &a) {
  switch (e->kind) {
  case Expectation::Kind::Constant:
    return e;
  case Expectation::Kind::Indicator:
    return Expectation::indicator(substitute(e->cond, x, a));
  case Expectation::Kind::Sum: {
    std::vector<ExpPtr> terms;
    terms.reserve(e->terms.size());
    for (const auto &t : e->terms)
      terms.push_back(substitute(t, x, a));
    return Expectation::sum(std::move(terms));
  }
  case Expectation::Kind::Scale:
    return Expectation::scale(e->value, substitute(e->lhs, x, a));
  case Expectation::Kind::Product:
    return Expectation::product(substitute(e->lhs, x, a), substitute(e->rhs, x, a));
  }
  return e;
}

RangeError::RangeError(std::string message, State st, Rational v)
    : std::runtime_error(std::move(message)), state(std::move(st)), value(std::move(v)) {}

namespace {

Rational evaluate_raw(const ExpPtr &e, const State &s) {
  switch (e->kind) {
  case Expectation::Kind::Constant:
    return e->value;
  case Expectation::Kind::Indicator:
    return eval_bool(e->cond, s) ? 1 : 0;
  case Expectation::Kind::Sum: {
    Rational total = 0;
    for (const auto &t : e->terms)
      total += evaluate_raw(t, s);
    return total;
  }
  case Expectation::Kind::Scale:
    return e->value * evaluate_raw(e->lhs, s);
  case Expectation::Kind::Product:
    return evaluate_raw(e->lhs, s) * evaluate_raw(e->rhs, s);
  }
  throw EvalError("malformed expectation");
}

} // namespace

Rational evaluate(const ExpPtr &e, const State &s) {
  Rational v = evaluate_raw(e, s);
  if (v < 0 || v > 1)
    throw RangeError("expectation evaluates to " + to_string(v) + " at " + to_string(s) +
                         ", outside [0,1]",
                     s, v);
  return v;
}

EntailmentResult entails(const ExpPtr &f, const ExpPtr &g, const StateSpace &space,
                         const std::vector<LogicalBinding> &bindings) {
  StateSpace extended = space;
  for (const auto &b : bindings)
    extended.domains.push_back(VarDomain{b.var, b.values});
  for (const auto &s : extended.enumerate()) {
    Rational lv, rv;
    try {
      lv = evaluate(f, s);
      rv = evaluate(g, s);
    } catch (const RangeError &err) {
      EntailmentResult r;
      r.verdict = EntailmentResult::Verdict::RangeViolation;
      r.witness = EntailmentWitness{err.state, err.value, err.value};
      return r;
    }
    if (lv > rv) {
      EntailmentResult r;
      r.verdict = EntailmentResult::Verdict::Invalid;
      r.witness = EntailmentWitness{s, lv, rv};
      return r;
    }
  }
  return EntailmentResult{};
}

ExpPtr simplify(const ExpPtr &e) {
  switch (e->kind) {
  case Expectation::Kind::Constant:
  case Expectation::Kind::Indicator:
    return e;
  case Expectation::Kind::Sum: {
    std::vector<ExpPtr> terms;
    Rational folded = 0;
    bool has_const = false;
    for (const auto &raw : e->terms) {
      ExpPtr t = simplify(raw);
      if (t->kind == Expectation::Kind::Constant) {
        if (t->value == 0)
          continue;
        folded += t->value;
        has_const = true;
        continue;
      }
      if (t->kind == Expectation::Kind::Sum) {
        for (const auto &inner : t->terms)
          terms.push_back(inner);
        continue;
      }
      terms.push_back(std::move(t));
    }
    if (has_const && folded != 0)
      terms.push_back(Expectation::constant(folded));
    if (terms.empty())
      return Expectation::constant(0);
    return Expectation::sum(std::move(terms));
  }
  case Expectation::Kind::Scale: {
    ExpPtr body = simplify(e->lhs);
    if (e->value == 0)
      return Expectation::constant(0);
    if (e->value == 1)
      return body;
    if (body->kind == Expectation::Kind::Constant)
      return Expectation::constant(e->value * body->value);
    if (body->kind == Expectation::Kind::Scale)
      return Expectation::scale(e->value * body->value, body->lhs);
    return Expectation::scale(e->value, std::move(body));
  }
  case Expectation::Kind::Product: {
    ExpPtr a = simplify(e->lhs);
    ExpPtr b = simplify(e->rhs);
    if (a->kind == Expectation::Kind::Constant)
      return simplify(Expectation::scale(a->value, b));
    if (b->kind == Expectation::Kind::Constant)
      return simplify(Expectation::scale(b->value, a));
    return Expectation::product(std::move(a), std::move(b));
  }
  }
  return e;
}

bool equal(const ExpPtr &a, const ExpPtr &b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
  case Expectation::Kind::Constant:
    return a->value == b->value;
  case Expectation::Kind::Indicator:
    return equal(a->cond, b->cond);
  case Expectation::Kind::Sum: {
    if (a->terms.size() != b->terms.size())
      return false;
    for (size_t i = 0; i < a->terms.size(); ++i)
      if (!equal(a->terms[i], b->terms[i]))
        return false;
    return true;
  }
  case Expectation::Kind::Scale:
    return a->value == b->value && equal(a->lhs, b->lhs);
  case Expectation::Kind::Product:
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;
}

bool equal(const Inst &a, const Inst &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Inst::Kind::Skip:
    return true;
  case Inst::Kind::Assign:
    return a.target == b.target && equal(a.expr, b.expr);
  case Inst::Kind::Cond:
    return equal(a.guard, b.guard) && equal(*a.branch1, *b.branch1) &&
           equal(*a.branch2, *b.branch2);
  case Inst::Kind::PChoice:
    return a.prob == b.prob && equal(*a.branch1, *b.branch1) && equal(*a.branch2, *b.branch2);
  case Inst::Kind::While: {
    if (!equal(a.guard, b.guard) || !equal(a.invariant, b.invariant) ||
        !equal(*a.branch1, *b.branch1))
      return false;
    if (a.total.has_value() != b.total.has_value())
      return false;
    if (!a.total)
      return true;
    return equal(a.total->terminates, b.total->terminates) &&
           equal(a.total->variant, b.total->variant) && a.total->lower == b.total->lower &&
           a.total->upper == b.total->upper && a.total->eps == b.total->eps;
  }
  }
  return false;
}

bool equal(const Prog &a, const Prog &b) {
  if (a.insts.size() != b.insts.size())
    return false;
  for (size_t i = 0; i < a.insts.size(); ++i)
    if (!equal(a.insts[i], b.insts[i]))
      return false;
  return true;
}

} // namespace pexp
