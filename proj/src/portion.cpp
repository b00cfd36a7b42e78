#include "pexp/portion.hpp"

#include "pexp/expectation.hpp"

namespace pexp {

namespace {

bool inst_portion(const Inst &a, const Inst &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case Inst::Kind::Skip:
    return true;
  case Inst::Kind::Assign:
    return a.target == b.target && equal(a.expr, b.expr);
  case Inst::Kind::Cond:
    return equal(a.guard, b.guard) && is_portion_of(*a.branch1, *b.branch1) &&
           is_portion_of(*a.branch2, *b.branch2);
  case Inst::Kind::PChoice:
    return a.prob == b.prob && is_portion_of(*a.branch1, *b.branch1) &&
           is_portion_of(*a.branch2, *b.branch2);
  case Inst::Kind::While: {
    if (!equal(a.guard, b.guard) || !equal(a.invariant, b.invariant) ||
        !is_portion_of(*a.branch1, *b.branch1))
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

} // namespace

bool is_portion_of(const Prog &a, const Prog &b) {
  if (a.insts.empty() || b.insts.empty())
    return false;
  // The single-skip program is a portion of anything.
  if (a.insts.size() == 1 && a.insts.front().kind == Inst::Kind::Skip)
    return true;
  // Otherwise a must embed into b as an order-preserving subsequence of
  // instruction portions.  The greedy leftmost embedding is complete here
  // because matching is a per-pair predicate.
  size_t j = 0;
  for (const auto &inst : a.insts) {
    for (;;) {
      if (j >= b.insts.size())
        return false;
      if (inst_portion(inst, b.insts[j])) {
        ++j;
        break;
      }
      ++j;
    }
  }
  return true;
}

} // namespace pexp
