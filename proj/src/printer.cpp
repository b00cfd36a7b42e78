#include "pexp/printer.hpp"

#include <sstream>

namespace pexp {

namespace {

// Precedence levels: additive = 1, multiplicative = 2, atoms = 3.
std::string arith_str(const ArithPtr &e, int parent_prec);

std::string bool_str(const BoolPtr &e, int parent_prec);

std::string paren_if(bool needed, std::string s) {
  return needed ? "(" + std::move(s) + ")" : std::move(s);
}

std::string arith_str(const ArithPtr &e, int parent_prec) {
  switch (e->kind) {
  case ArithExpr::Kind::Constant:
    if (e->value < 0)
      return paren_if(parent_prec > 1, to_string(e->value));
    return to_string(e->value);
  case ArithExpr::Kind::Variable:
    return e->var;
  case ArithExpr::Kind::Negate:
    return paren_if(parent_prec > 1, "-" + arith_str(e->lhs, 3));
  case ArithExpr::Kind::Add:
    return paren_if(parent_prec > 1, arith_str(e->lhs, 1) + " + " + arith_str(e->rhs, 2));
  case ArithExpr::Kind::Sub:
    return paren_if(parent_prec > 1, arith_str(e->lhs, 1) + " - " + arith_str(e->rhs, 2));
  case ArithExpr::Kind::Mul:
    return paren_if(parent_prec > 2, arith_str(e->lhs, 2) + "*" + arith_str(e->rhs, 3));
  case ArithExpr::Kind::Square:
    return arith_str(e->lhs, 3) + "^2";
  case ArithExpr::Kind::Indicator:
    return "[" + bool_str(e->cond, 0) + "]";
  }
  return "?";
}

const char *cmp_str(BoolExpr::Cmp c) {
  switch (c) {
  case BoolExpr::Cmp::Eq:
    return "=";
  case BoolExpr::Cmp::Ne:
    return "!=";
  case BoolExpr::Cmp::Lt:
    return "<";
  case BoolExpr::Cmp::Le:
    return "<=";
  case BoolExpr::Cmp::Gt:
    return ">";
  case BoolExpr::Cmp::Ge:
    return ">=";
  }
  return "?";
}

// Precedence: or = 1, and = 2, not/atom = 3.
std::string bool_str(const BoolPtr &e, int parent_prec) {
  switch (e->kind) {
  case BoolExpr::Kind::True:
    return "true";
  case BoolExpr::Kind::False:
    return "false";
  case BoolExpr::Kind::Compare:
    return arith_str(e->lhs_a, 1) + " " + cmp_str(e->cmp) + " " + arith_str(e->rhs_a, 1);
  case BoolExpr::Kind::And:
    return paren_if(parent_prec > 2, bool_str(e->lhs, 2) + " && " + bool_str(e->rhs, 3));
  case BoolExpr::Kind::Or:
    return paren_if(parent_prec > 1, bool_str(e->lhs, 1) + " || " + bool_str(e->rhs, 2));
  case BoolExpr::Kind::Not:
    return "!(" + bool_str(e->lhs, 0) + ")";
  }
  return "?";
}

// Precedence: sum = 1, scale/product = 2, atom = 3.
std::string exp_str(const ExpPtr &e, int parent_prec) {
  switch (e->kind) {
  case Expectation::Kind::Constant:
    if (e->value < 0)
      return paren_if(parent_prec > 1, to_string(e->value));
    return to_string(e->value);
  case Expectation::Kind::Indicator:
    return "[" + bool_str(e->cond, 0) + "]";
  case Expectation::Kind::Sum: {
    if (e->terms.empty())
      return "0";
    std::string s;
    for (size_t i = 0; i < e->terms.size(); ++i) {
      if (i)
        s += " + ";
      s += exp_str(e->terms[i], 2);
    }
    return paren_if(parent_prec > 1, std::move(s));
  }
  case Expectation::Kind::Scale:
    return paren_if(parent_prec > 2, to_string(e->value) + " * " + exp_str(e->lhs, 3));
  case Expectation::Kind::Product:
    return paren_if(parent_prec > 2, exp_str(e->lhs, 2) + " * " + exp_str(e->rhs, 3));
  }
  return "?";
}

std::string indent_str(int indent) {
  return std::string(static_cast<size_t>(indent) * 2, ' ');
}

std::string inst_str(const Inst &inst, int indent, bool multiline);

std::string block_str(const Prog &prog, int indent, bool multiline) {
  if (!multiline) {
    std::string s = "{ ";
    for (size_t i = 0; i < prog.insts.size(); ++i) {
      if (i)
        s += "; ";
      s += inst_str(prog.insts[i], 0, false);
    }
    return s + " }";
  }
  std::string s = "{\n";
  for (size_t i = 0; i < prog.insts.size(); ++i) {
    s += indent_str(indent + 1) + inst_str(prog.insts[i], indent + 1, true);
    s += i + 1 < prog.insts.size() ? ";\n" : "\n";
  }
  return s + indent_str(indent) + "}";
}

std::string loop_annotations(const Inst &inst) {
  std::string s = " @invariant{ " + exp_str(inst.invariant, 0) + " }";
  if (inst.total) {
    s += " @terminates{ " + bool_str(inst.total->terminates, 0) + " }";
    s += " @variant{ " + arith_str(inst.total->variant, 0) + " }";
    s += " @bounds{ " + to_string(inst.total->lower) + ", " + to_string(inst.total->upper) + " }";
    s += " @eps{ " + to_string(inst.total->eps) + " }";
  }
  return s;
}

std::string inst_str(const Inst &inst, int indent, bool multiline) {
  switch (inst.kind) {
  case Inst::Kind::Skip:
    return "skip";
  case Inst::Kind::Assign:
    return inst.target + " := " + arith_str(inst.expr, 0);
  case Inst::Kind::Cond:
    return "if (" + bool_str(inst.guard, 0) + ") " + block_str(*inst.branch1, indent, multiline) +
           " else " + block_str(*inst.branch2, indent, multiline);
  case Inst::Kind::PChoice:
    return block_str(*inst.branch1, indent, multiline) + " [" + to_string(inst.prob) + "] " +
           block_str(*inst.branch2, indent, multiline);
  case Inst::Kind::While:
    return "while (" + bool_str(inst.guard, 0) + ")" + loop_annotations(inst) + " do " +
           block_str(*inst.branch1, indent, multiline);
  }
  return "?";
}

} // namespace

std::string to_string(const ArithPtr &e) {
  return arith_str(e, 0);
}

std::string to_string(const BoolPtr &e) {
  return bool_str(e, 0);
}

std::string to_string(const ExpPtr &e) {
  return exp_str(e, 0);
}

std::string to_string(const Inst &inst) {
  return inst_str(inst, 0, false);
}

std::string pretty_print(const Prog &prog, int indent) {
  std::string s;
  for (size_t i = 0; i < prog.insts.size(); ++i) {
    s += indent_str(indent) + inst_str(prog.insts[i], indent, true);
    if (i + 1 < prog.insts.size())
      s += ";";
    s += "\n";
  }
  return s;
}

} // namespace pexp
