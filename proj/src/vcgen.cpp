#include "pexp/vcgen.hpp"

#include <stdexcept>

namespace pexp {

namespace {

ExpPtr guard_of(const BoolPtr &b) {
  return Expectation::indicator(b);
}

ExpPtr guard_mul(const BoolPtr &b, const ExpPtr &e) {
  return simplify(Expectation::product(guard_of(b), e));
}

ExpPtr loop_wpre(const Inst &inst, bool total) {
  if (!total)
    return inst.invariant;
  if (!inst.total)
    throw std::invalid_argument("total-correctness transformer requires "
                                "@terminates/@variant/@bounds/@eps on every loop");
  return guard_mul(inst.total->terminates, inst.invariant);
}

ExpPtr wpre_inst(const Inst &inst, const ExpPtr &g, bool total);

ExpPtr wpre_span(const Prog &p, size_t from, const ExpPtr &g, bool total) {
  ExpPtr cur = g;
  for (size_t i = p.insts.size(); i-- > from;)
    cur = wpre_inst(p.insts[i], cur, total);
  return cur;
}

ExpPtr wpre_inst(const Inst &inst, const ExpPtr &g, bool total) {
  switch (inst.kind) {
  case Inst::Kind::Skip:
    return g;
  case Inst::Kind::Assign:
    return simplify(substitute(g, inst.target, inst.expr));
  case Inst::Kind::Cond:
    return simplify(Expectation::sum({guard_mul(inst.guard, wpre_span(*inst.branch1, 0, g, total)),
                                      guard_mul(BoolExpr::negation(inst.guard),
                                                wpre_span(*inst.branch2, 0, g, total))}));
  case Inst::Kind::PChoice:
    return simplify(Expectation::sum(
        {Expectation::scale(inst.prob, wpre_span(*inst.branch1, 0, g, total)),
         Expectation::scale(1 - inst.prob, wpre_span(*inst.branch2, 0, g, total))}));
  case Inst::Kind::While:
    return loop_wpre(inst, total);
  }
  return g;
}

struct VcContext {
  bool total = false;
  size_t fresh_counter = 0;
  std::vector<LogicalBinding> ambient;

  [[nodiscard]] std::string fresh_var() { return "v0_" + std::to_string(++fresh_counter); }
};

std::string child_path(const std::string &prefix, size_t index1) {
  return prefix + "[" + std::to_string(index1) + "]";
}

void vc_span(const Prog &p, size_t from, const ExpPtr &g, const std::string &prefix,
             VcContext &ctx, VCSet &out);

void vc_inst(const Inst &inst, const ExpPtr &g, const std::string &path, VcContext &ctx,
             VCSet &out) {
  switch (inst.kind) {
  case Inst::Kind::Skip:
  case Inst::Kind::Assign:
    return;
  case Inst::Kind::Cond:
    vc_span(*inst.branch1, 0, g, path + ".then", ctx, out);
    vc_span(*inst.branch2, 0, g, path + ".else", ctx, out);
    return;
  case Inst::Kind::PChoice:
    vc_span(*inst.branch1, 0, g, path + ".left", ctx, out);
    vc_span(*inst.branch2, 0, g, path + ".right", ctx, out);
    return;
  case Inst::Kind::While: {
    const std::string body_prefix = path + ".body";
    if (ctx.total) {
      if (!inst.total)
        throw std::invalid_argument("total-correctness VCs require loop annotations at " + path);
      const TotalLoopAnnotation &t = *inst.total;
      BoolPtr gt = BoolExpr::conj(inst.guard, t.terminates);
      ExpPtr ind_t = guard_of(t.terminates);

      out.add(VC{guard_of(gt), wpre_span(*inst.branch1, 0, ind_t, true), ctx.ambient,
                 {"loop-termination-invariant @ " + path}});

      LogicalBinding snapshot;
      snapshot.var = ctx.fresh_var();
      for (Rational v = t.lower; v <= t.upper; v += 1)
        snapshot.values.push_back(v);
      ArithPtr v0 = ArithExpr::variable(snapshot.var);
      BoolPtr at_v0 = BoolExpr::conj(gt, BoolExpr::compare(BoolExpr::Cmp::Eq, t.variant, v0));
      ExpPtr decreased =
          guard_of(BoolExpr::compare(BoolExpr::Cmp::Lt, t.variant, v0));
      std::vector<LogicalBinding> with_snapshot = ctx.ambient;
      with_snapshot.push_back(snapshot);
      out.add(VC{simplify(Expectation::scale(t.eps, guard_of(at_v0))),
                 wpre_span(*inst.branch1, 0, decreased, true), with_snapshot,
                 {"loop-variant-decrease @ " + path}});

      BoolPtr in_bounds = BoolExpr::conj(
          BoolExpr::compare(BoolExpr::Cmp::Le, ArithExpr::constant(t.lower), t.variant),
          BoolExpr::compare(BoolExpr::Cmp::Le, t.variant, ArithExpr::constant(t.upper)));
      out.add(VC{guard_of(gt), guard_of(in_bounds), ctx.ambient,
                 {"loop-variant-bounds @ " + path}});

      vc_span(*inst.branch1, 0, ind_t, body_prefix, ctx, out);
      std::vector<LogicalBinding> saved = ctx.ambient;
      ctx.ambient = with_snapshot;
      vc_span(*inst.branch1, 0, decreased, body_prefix, ctx, out);
      ctx.ambient = std::move(saved);
    }
    // Invariant obligations are partial-style in both modes.
    out.add(VC{guard_mul(inst.guard, inst.invariant),
               wpre_span(*inst.branch1, 0, inst.invariant, false), ctx.ambient,
               {"loop-invariant-preservation @ " + path}});
    out.add(VC{guard_mul(BoolExpr::negation(inst.guard), inst.invariant), g, ctx.ambient,
               {"loop-exit @ " + path}});
    bool saved_total = ctx.total;
    ctx.total = false;
    vc_span(*inst.branch1, 0, inst.invariant, body_prefix, ctx, out);
    ctx.total = saved_total;
    return;
  }
  }
}

void vc_span(const Prog &p, size_t from, const ExpPtr &g, const std::string &prefix,
             VcContext &ctx, VCSet &out) {
  for (size_t i = from; i < p.insts.size(); ++i) {
    ExpPtr post = wpre_span(p, i + 1, g, ctx.total);
    vc_inst(p.insts[i], post, child_path(prefix, i + 1), ctx, out);
  }
}

bool bindings_equal(const std::vector<LogicalBinding> &a, const std::vector<LogicalBinding> &b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var || a[i].values != b[i].values)
      return false;
  return true;
}

} // namespace

void VCSet::add(VC vc) {
  for (auto &existing : vcs) {
    if (equal(existing.lhs, vc.lhs) && equal(existing.rhs, vc.rhs) &&
        bindings_equal(existing.bindings, vc.bindings)) {
      for (auto &origin : vc.origins) {
        bool seen = false;
        for (const auto &have : existing.origins)
          seen = seen || have == origin;
        if (!seen)
          existing.origins.push_back(std::move(origin));
      }
      return;
    }
  }
  vcs.push_back(std::move(vc));
}

void VCSet::add_all(const VCSet &other) {
  for (const auto &vc : other.vcs)
    add(vc);
}

ExpPtr wpre(const Prog &p, const ExpPtr &g) {
  return wpre_span(p, 0, g, false);
}

ExpPtr wpre_total(const Prog &p, const ExpPtr &g) {
  return wpre_span(p, 0, g, true);
}

VCSet vc(const Prog &p, const ExpPtr &g) {
  VCSet out;
  VcContext ctx;
  vc_span(p, 0, g, "", ctx, out);
  return out;
}

VCSet vc_total(const Prog &p, const ExpPtr &g) {
  VCSet out;
  VcContext ctx;
  ctx.total = true;
  vc_span(p, 0, g, "", ctx, out);
  return out;
}

VCSet vcg(const ExpPtr &f, const Prog &p, const ExpPtr &g) {
  VCSet out;
  out.add(VC{f, wpre(p, g), {}, {"precondition"}});
  out.add_all(vc(p, g));
  return out;
}

VCSet vcg_total(const ExpPtr &f, const Prog &p, const ExpPtr &g) {
  VCSet out;
  out.add(VC{f, wpre_total(p, g), {}, {"precondition"}});
  out.add_all(vc_total(p, g));
  return out;
}

ExpPtr wpre_suffix(size_t j, const Prog &p, const ExpPtr &g, Mode mode) {
  if (j < 1 || j > p.insts.size() + 1)
    throw std::out_of_range("wpre_suffix index out of range");
  return wpre_span(p, j - 1, g, mode == Mode::Total);
}

VCSet vc_suffix(size_t j, const Prog &p, const ExpPtr &g, Mode mode) {
  if (j < 1 || j > p.insts.size() + 1)
    throw std::out_of_range("vc_suffix index out of range");
  VCSet out;
  VcContext ctx;
  ctx.total = mode == Mode::Total;
  vc_span(p, j - 1, g, "", ctx, out);
  return out;
}

VCSet vcg_suffix(size_t j, const ExpPtr &f, const Prog &p, const ExpPtr &g, Mode mode) {
  if (j < 1 || j > p.insts.size() + 1)
    throw std::out_of_range("vcg_suffix index out of range");
  VCSet out;
  if (j == p.insts.size() + 1)
    return out; // empty suffix: no claims
  out.add(VC{f, wpre_suffix(j, p, g, mode), {}, {"precondition"}});
  out.add_all(vc_suffix(j, p, g, mode));
  return out;
}

VCSet vcg_prefix(size_t j, const ExpPtr &f, const Prog &p, const ExpPtr &g, Mode mode) {
  if (j > p.insts.size())
    throw std::out_of_range("vcg_prefix index out of range");
  VCSet out;
  if (j == 0) {
    out.add(VC{f, g, {}, {"precondition"}});
    return out;
  }
  Prog prefix;
  prefix.insts.assign(p.insts.begin(), p.insts.begin() + static_cast<long>(j));
  return mode == Mode::Total ? vcg_total(f, prefix, g) : vcg(f, prefix, g);
}

ExpPtr wpre_mode(const Prog &p, const ExpPtr &g, Mode mode) {
  return mode == Mode::Total ? wpre_total(p, g) : wpre(p, g);
}

VCSet vcg_mode(const ExpPtr &f, const Prog &p, const ExpPtr &g, Mode mode) {
  return mode == Mode::Total ? vcg_total(f, p, g) : vcg(f, p, g);
}

DischargeReport discharge(const VCSet &vcs, const StateSpace &space) {
  DischargeReport report;
  for (const auto &vc : vcs.vcs) {
    DischargeEntry entry{vc, entails(vc.lhs, vc.rhs, space, vc.bindings)};
    report.valid = report.valid && entry.result.valid();
    report.entries.push_back(std::move(entry));
  }
  return report;
}

} // namespace pexp
