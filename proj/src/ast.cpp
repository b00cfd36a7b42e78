#include "pexp/ast.hpp"

namespace pexp {

namespace {

ArithPtr make_arith(ArithExpr node) {
  return std::make_shared<const ArithExpr>(std::move(node));
}

BoolPtr make_bool(BoolExpr node) {
  return std::make_shared<const BoolExpr>(std::move(node));
}

} // namespace

ArithPtr ArithExpr::constant(Rational q) {
  ArithExpr e;
  e.kind = Kind::Constant;
  e.value = std::move(q);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::variable(std::string name) {
  ArithExpr e;
  e.kind = Kind::Variable;
  e.var = std::move(name);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::negate(ArithPtr x) {
  ArithExpr e;
  e.kind = Kind::Negate;
  e.lhs = std::move(x);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::add(ArithPtr a, ArithPtr b) {
  ArithExpr e;
  e.kind = Kind::Add;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::sub(ArithPtr a, ArithPtr b) {
  ArithExpr e;
  e.kind = Kind::Sub;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::mul(ArithPtr a, ArithPtr b) {
  ArithExpr e;
  e.kind = Kind::Mul;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::square(ArithPtr x) {
  ArithExpr e;
  e.kind = Kind::Square;
  e.lhs = std::move(x);
  return make_arith(std::move(e));
}

ArithPtr ArithExpr::indicator(BoolPtr b) {
  ArithExpr e;
  e.kind = Kind::Indicator;
  e.cond = std::move(b);
  return make_arith(std::move(e));
}

BoolPtr BoolExpr::truth(bool b) {
  BoolExpr e;
  e.kind = b ? Kind::True : Kind::False;
  return make_bool(std::move(e));
}

BoolPtr BoolExpr::compare(Cmp op, ArithPtr a, ArithPtr b) {
  BoolExpr e;
  e.kind = Kind::Compare;
  e.cmp = op;
  e.lhs_a = std::move(a);
  e.rhs_a = std::move(b);
  return make_bool(std::move(e));
}

BoolPtr BoolExpr::conj(BoolPtr a, BoolPtr b) {
  BoolExpr e;
  e.kind = Kind::And;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_bool(std::move(e));
}

BoolPtr BoolExpr::disj(BoolPtr a, BoolPtr b) {
  BoolExpr e;
  e.kind = Kind::Or;
  e.lhs = std::move(a);
  e.rhs = std::move(b);
  return make_bool(std::move(e));
}

BoolPtr BoolExpr::negation(BoolPtr a) {
  BoolExpr e;
  e.kind = Kind::Not;
  e.lhs = std::move(a);
  return make_bool(std::move(e));
}

ArithPtr substitute(const ArithPtr &expr, const std::string &x, const ArithPtr &e) {
  switch (expr->kind) {
  case ArithExpr::Kind::Constant:
    return expr;
  case ArithExpr::Kind::Variable:
    return expr->var == x ? e : expr;
  case ArithExpr::Kind::Negate:
    return ArithExpr::negate(substitute(expr->lhs, x, e));
  case ArithExpr::Kind::Add:
    return ArithExpr::add(substitute(expr->lhs, x, e), substitute(expr->rhs, x, e));
  case ArithExpr::Kind::Sub:
    return ArithExpr::sub(substitute(expr->lhs, x, e), substitute(expr->rhs, x, e));
  case ArithExpr::Kind::Mul:
    return ArithExpr::mul(substitute(expr->lhs, x, e), substitute(expr->rhs, x, e));
  case ArithExpr::Kind::Square:
    return ArithExpr::square(substitute(expr->lhs, x, e));
  case ArithExpr::Kind::Indicator:
    return ArithExpr::indicator(substitute(expr->cond, x, e));
  }
  return expr;
}

BoolPtr substitute(const BoolPtr &expr, const std::string &x, const ArithPtr &e) {
  switch (expr->kind) {
  case BoolExpr::Kind::True:
  case BoolExpr::Kind::False:
    return expr;
  case BoolExpr::Kind::Compare:
    return BoolExpr::compare(expr->cmp, substitute(expr->lhs_a, x, e),
                             substitute(expr->rhs_a, x, e));
  case BoolExpr::Kind::And:
    return BoolExpr::conj(substitute(expr->lhs, x, e), substitute(expr->rhs, x, e));
  case BoolExpr::Kind::Or:
    return BoolExpr::disj(substitute(expr->lhs, x, e), substitute(expr->rhs, x, e));
  case BoolExpr::Kind::Not:
    return BoolExpr::negation(substitute(expr->lhs, x, e));
  }
  return expr;
}

Inst make_skip() {
  return Inst{};
}

Inst make_assign(std::string target, ArithPtr expr) {
  Inst i;
  i.kind = Inst::Kind::Assign;
  i.target = std::move(target);
  i.expr = std::move(expr);
  return i;
}

Inst make_cond(BoolPtr guard, Prog then_branch, Prog else_branch) {
  Inst i;
  i.kind = Inst::Kind::Cond;
  i.guard = std::move(guard);
  i.branch1 = std::make_shared<Prog>(std::move(then_branch));
  i.branch2 = std::make_shared<Prog>(std::move(else_branch));
  return i;
}

Inst make_pchoice(Prog left, Rational p, Prog right) {
  Inst i;
  i.kind = Inst::Kind::PChoice;
  i.branch1 = std::make_shared<Prog>(std::move(left));
  i.branch2 = std::make_shared<Prog>(std::move(right));
  i.prob = std::move(p);
  return i;
}

Inst make_while(BoolPtr guard, ExpPtr invariant, Prog body,
                std::optional<TotalLoopAnnotation> total) {
  Inst i;
  i.kind = Inst::Kind::While;
  i.guard = std::move(guard);
  i.invariant = std::move(invariant);
  i.branch1 = std::make_shared<Prog>(std::move(body));
  i.total = std::move(total);
  return i;
}

bool equal(const ArithPtr &a, const ArithPtr &b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
  case ArithExpr::Kind::Constant:
    return a->value == b->value;
  case ArithExpr::Kind::Variable:
    return a->var == b->var;
  case ArithExpr::Kind::Negate:
  case ArithExpr::Kind::Square:
    return equal(a->lhs, b->lhs);
  case ArithExpr::Kind::Add:
  case ArithExpr::Kind::Sub:
  case ArithExpr::Kind::Mul:
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  case ArithExpr::Kind::Indicator:
    return equal(a->cond, b->cond);
  }
  return false;
}

bool equal(const BoolPtr &a, const BoolPtr &b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
  case BoolExpr::Kind::True:
  case BoolExpr::Kind::False:
    return true;
  case BoolExpr::Kind::Compare:
    return a->cmp == b->cmp && equal(a->lhs_a, b->lhs_a) && equal(a->rhs_a, b->rhs_a);
  case BoolExpr::Kind::And:
  case BoolExpr::Kind::Or:
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  case BoolExpr::Kind::Not:
    return equal(a->lhs, b->lhs);
  }
  return false;
}

} // namespace pexp
