#include "pexp/slicing.hpp"

#include <stdexcept>

#include "pexp/portion.hpp"

namespace pexp {

std::string to_string(const SubprogramPath &path) {
  if (path.steps.empty())
    return "<root>";
  std::string s;
  for (const auto &step : path.steps) {
    switch (step.kind) {
    case PathStep::Kind::Index:
      s += "[" + std::to_string(step.index) + "]";
      break;
    case PathStep::Kind::Then:
      s += ".then";
      break;
    case PathStep::Kind::Else:
      s += ".else";
      break;
    case PathStep::Kind::Left:
      s += ".left";
      break;
    case PathStep::Kind::Right:
      s += ".right";
      break;
    case PathStep::Kind::Body:
      s += ".body";
      break;
    }
  }
  return s;
}

std::string to_string(const RemovalRecord &record) {
  if (record.to_skip)
    return to_string(record.parent) + " -> skip";
  return "removed " + to_string(record.parent) + "[" + std::to_string(record.j) + ".." +
         std::to_string(record.k) + "]";
}

Prog remove(size_t j, size_t k, const Prog &p) {
  size_t n = p.insts.size();
  if (j < 1 || j > k || k > n)
    throw std::out_of_range("remove: invalid span");
  if (j == 1 && k == n) {
    Prog skip_prog;
    skip_prog.insts.push_back(make_skip());
    return skip_prog;
  }
  Prog out;
  for (size_t i = 0; i < n; ++i)
    if (i + 1 < j || i + 1 > k)
      out.insts.push_back(p.insts[i]);
  return out;
}

std::vector<std::pair<size_t, size_t>> top_level_candidates(const Prog &p, const ExpPtr &g,
                                                            Mode mode,
                                                            const StateSpace &space) {
  std::vector<std::pair<size_t, size_t>> out;
  size_t n = p.insts.size();
  for (size_t j = 1; j <= n; ++j)
    for (size_t k = j; k <= n; ++k) {
      EntailmentResult r =
          entails(wpre_suffix(j, p, g, mode), wpre_suffix(k + 1, p, g, mode), space);
      if (r.valid())
        out.emplace_back(j, k);
    }
  return out;
}

namespace {

ExpPtr guard_exp(const BoolPtr &b) {
  return Expectation::indicator(b);
}

ExpPtr guard_mul(const BoolPtr &b, const ExpPtr &e) {
  return simplify(Expectation::product(guard_exp(b), e));
}

SubprogramPath extend(const SubprogramPath &base, size_t index1, PathStep::Kind branch) {
  SubprogramPath p = base;
  p.steps.push_back(PathStep{PathStep::Kind::Index, index1});
  p.steps.push_back(PathStep{branch, 0});
  return p;
}

} // namespace

std::vector<LocalSpec> induced_specs(const LocalSpec &parent, const Prog &p, size_t j,
                                     PathStep::Kind branch, size_t &fresh_counter) {
  const Inst &inst = p.insts[j - 1];
  ExpPtr after = wpre_suffix(j + 1, p, parent.post, parent.kind);
  std::vector<LocalSpec> out;
  auto child = [&](PathStep::Kind step) {
    LocalSpec s;
    s.path = extend(parent.path, j, step);
    s.kind = parent.kind;
    s.post = after;
    s.bindings = parent.bindings;
    return s;
  };
  switch (inst.kind) {
  case Inst::Kind::Cond: {
    if (branch == PathStep::Kind::Then) {
      LocalSpec s = child(PathStep::Kind::Then);
      s.pre = guard_mul(inst.guard, wpre_mode(*inst.branch1, after, parent.kind));
      out.push_back(std::move(s));
    } else {
      LocalSpec s = child(PathStep::Kind::Else);
      s.pre = guard_mul(BoolExpr::negation(inst.guard),
                        wpre_mode(*inst.branch2, after, parent.kind));
      out.push_back(std::move(s));
    }
    return out;
  }
  case Inst::Kind::PChoice: {
    // Branch specs are unguarded: the pre is the branch's own transformer.
    if (branch == PathStep::Kind::Left) {
      LocalSpec s = child(PathStep::Kind::Left);
      s.pre = simplify(wpre_mode(*inst.branch1, after, parent.kind));
      out.push_back(std::move(s));
    } else {
      LocalSpec s = child(PathStep::Kind::Right);
      s.pre = simplify(wpre_mode(*inst.branch2, after, parent.kind));
      out.push_back(std::move(s));
    }
    return out;
  }
  case Inst::Kind::While: {
    LocalSpec inv = child(PathStep::Kind::Body);
    inv.kind = Mode::Partial;
    inv.pre = guard_mul(inst.guard, inst.invariant);
    inv.post = inst.invariant;
    out.push_back(std::move(inv));
    if (parent.kind == Mode::Total) {
      if (!inst.total)
        throw std::invalid_argument("total slicing requires loop annotations");
      const TotalLoopAnnotation &t = *inst.total;
      BoolPtr gt = BoolExpr::conj(inst.guard, t.terminates);

      LocalSpec term = child(PathStep::Kind::Body);
      term.kind = Mode::Total;
      term.pre = guard_exp(gt);
      term.post = guard_exp(t.terminates);
      out.push_back(std::move(term));

      LogicalBinding snapshot;
      snapshot.var = "v0_" + std::to_string(++fresh_counter);
      for (Rational v = t.lower; v <= t.upper; v += 1)
        snapshot.values.push_back(v);
      ArithPtr v0 = ArithExpr::variable(snapshot.var);
      LocalSpec var = child(PathStep::Kind::Body);
      var.kind = Mode::Total;
      var.pre = simplify(Expectation::scale(
          t.eps, guard_exp(BoolExpr::conj(
                     gt, BoolExpr::compare(BoolExpr::Cmp::Eq, t.variant, v0)))));
      var.post = guard_exp(BoolExpr::compare(BoolExpr::Cmp::Lt, t.variant, v0));
      var.bindings.push_back(std::move(snapshot));
      out.push_back(std::move(var));
    }
    return out;
  }
  default:
    return out;
  }
}

namespace {

bool spec_equal(const LocalSpec &a, const LocalSpec &b) {
  if (a.kind != b.kind || !equal(a.pre, b.pre) || !equal(a.post, b.post))
    return false;
  if (a.bindings.size() != b.bindings.size())
    return false;
  for (size_t i = 0; i < a.bindings.size(); ++i)
    if (a.bindings[i].values != b.bindings[i].values)
      return false;
  return true;
}

void collect_specs(const Prog &p, const std::vector<LocalSpec> &specs, size_t &fresh_counter,
                   std::vector<LocalSpec> &out) {
  for (const auto &s : specs) {
    bool dup = false;
    for (const auto &have : out)
      dup = dup || (to_string(have.path) == to_string(s.path) && spec_equal(have, s));
    if (!dup)
      out.push_back(s);
  }
  for (size_t j = 1; j <= p.insts.size(); ++j) {
    const Inst &inst = p.insts[j - 1];
    auto descend = [&](PathStep::Kind branch, const Prog &sub) {
      std::vector<LocalSpec> child_specs;
      for (const auto &s : specs)
        for (auto &c : induced_specs(s, p, j, branch, fresh_counter)) {
          bool dup = false;
          for (const auto &have : child_specs)
            dup = dup || spec_equal(have, c);
          if (!dup)
            child_specs.push_back(std::move(c));
        }
      collect_specs(sub, child_specs, fresh_counter, out);
    };
    switch (inst.kind) {
    case Inst::Kind::Cond:
      descend(PathStep::Kind::Then, *inst.branch1);
      descend(PathStep::Kind::Else, *inst.branch2);
      break;
    case Inst::Kind::PChoice:
      descend(PathStep::Kind::Left, *inst.branch1);
      descend(PathStep::Kind::Right, *inst.branch2);
      break;
    case Inst::Kind::While:
      descend(PathStep::Kind::Body, *inst.branch1);
      break;
    default:
      break;
    }
  }
}

} // namespace

std::vector<LocalSpec> local_specifications(const Prog &p, const ExpPtr &f, const ExpPtr &g,
                                            Mode mode) {
  LocalSpec root;
  root.kind = mode;
  root.pre = f;
  root.post = g;
  std::vector<LocalSpec> out;
  size_t fresh_counter = 0;
  collect_specs(p, {root}, fresh_counter, out);
  return out;
}

const Prog &subprogram_at(const Prog &p, const SubprogramPath &path) {
  const Prog *cur = &p;
  for (size_t i = 0; i < path.steps.size(); ++i) {
    const PathStep &step = path.steps[i];
    if (step.kind != PathStep::Kind::Index || step.index < 1 ||
        step.index > cur->insts.size() || i + 1 >= path.steps.size())
      throw std::invalid_argument("unresolvable subprogram path");
    const Inst &inst = cur->insts[step.index - 1];
    const PathStep &sel = path.steps[++i];
    switch (sel.kind) {
    case PathStep::Kind::Then:
    case PathStep::Kind::Left:
    case PathStep::Kind::Body:
      if (!inst.branch1)
        throw std::invalid_argument("unresolvable subprogram path");
      cur = inst.branch1.get();
      break;
    case PathStep::Kind::Else:
    case PathStep::Kind::Right:
      if (!inst.branch2)
        throw std::invalid_argument("unresolvable subprogram path");
      cur = inst.branch2.get();
      break;
    default:
      throw std::invalid_argument("unresolvable subprogram path");
    }
  }
  return *cur;
}

Prog replace_subprogram(const Prog &p, const SubprogramPath &path, const Prog &replacement) {
  if (path.steps.empty())
    return replacement;
  if (path.steps.size() < 2 || path.steps[0].kind != PathStep::Kind::Index)
    throw std::invalid_argument("unresolvable subprogram path");
  size_t index = path.steps[0].index;
  if (index < 1 || index > p.insts.size())
    throw std::invalid_argument("unresolvable subprogram path");
  Prog out = p;
  Inst &inst = out.insts[index - 1];
  SubprogramPath rest;
  rest.steps.assign(path.steps.begin() + 2, path.steps.end());
  auto sub = [&](const std::shared_ptr<Prog> &branch) {
    if (!branch)
      throw std::invalid_argument("unresolvable subprogram path");
    return std::make_shared<Prog>(replace_subprogram(*branch, rest, replacement));
  };
  switch (path.steps[1].kind) {
  case PathStep::Kind::Then:
  case PathStep::Kind::Left:
  case PathStep::Kind::Body:
    inst.branch1 = sub(inst.branch1);
    break;
  case PathStep::Kind::Else:
  case PathStep::Kind::Right:
    inst.branch2 = sub(inst.branch2);
    break;
  default:
    throw std::invalid_argument("unresolvable subprogram path");
  }
  return out;
}

namespace {

struct GreedySlicer {
  const StateSpace &space;
  const SliceOptions &options;
  size_t fresh_counter = 0;
  std::vector<RemovalRecord> removals;

  [[nodiscard]] bool span_ok(const Prog &p, const std::vector<LocalSpec> &specs, size_t j,
                             size_t k) const {
    for (const auto &s : specs) {
      EntailmentResult r = entails(wpre_suffix(j, p, s.post, s.kind),
                                   wpre_suffix(k + 1, p, s.post, s.kind), space, s.bindings);
      if (!r.valid())
        return false;
    }
    return true;
  }

  [[nodiscard]] bool skip_ok(const std::vector<LocalSpec> &specs) const {
    for (const auto &s : specs)
      if (!entails(s.pre, s.post, space, s.bindings).valid())
        return false;
    return true;
  }

  Prog run(Prog p, std::vector<LocalSpec> specs, bool is_loop_body,
           const SubprogramPath &here) {
    // Whole-subprogram replacement by skip, justified by pre ⇒ post of
    // every spec attached to this subprogram.
    bool already_skip = p.insts.size() == 1 && p.insts[0].kind == Inst::Kind::Skip;
    bool gated = is_loop_body && !options.allow_trivial_loop_slices;
    if (!already_skip && !gated && skip_ok(specs)) {
      RemovalRecord rec;
      rec.parent = here;
      rec.j = 1;
      rec.k = p.insts.size();
      rec.to_skip = true;
      removals.push_back(rec);
      return remove(1, p.insts.size(), p);
    }
    for (;;) {
      size_t n = p.insts.size();
      bool removed = false;
      for (size_t len = n; len >= 1 && !removed; --len) {
        for (size_t j = 1; j + len - 1 <= n && !removed; ++j) {
          size_t k = j + len - 1;
          if (j == 1 && k == n)
            continue; // full replacement handled above
          if (span_ok(p, specs, j, k)) {
            RemovalRecord rec;
            rec.parent = here;
            rec.j = j;
            rec.k = k;
            rec.to_skip = false;
            removals.push_back(rec);
            p = remove(j, k, p);
            removed = true;
          }
        }
      }
      if (removed)
        continue;

      bool changed = false;
      for (size_t j = 1; j <= p.insts.size(); ++j) {
        Inst &inst = p.insts[j - 1];
        auto descend = [&](PathStep::Kind branch, std::shared_ptr<Prog> &target,
                           bool loop_body) {
          std::vector<LocalSpec> child_specs;
          for (const auto &s : specs)
            for (auto &c : induced_specs(s, p, j, branch, fresh_counter)) {
              bool dup = false;
              for (const auto &have : child_specs)
                dup = dup || spec_equal(have, c);
              if (!dup)
                child_specs.push_back(std::move(c));
            }
          SubprogramPath child_path = extend(here, j, branch);
          Prog sliced = run(*target, child_specs, loop_body, child_path);
          if (!equal(sliced, *target)) {
            target = std::make_shared<Prog>(std::move(sliced));
            changed = true;
          }
        };
        switch (inst.kind) {
        case Inst::Kind::Cond:
          descend(PathStep::Kind::Then, inst.branch1, false);
          descend(PathStep::Kind::Else, inst.branch2, false);
          break;
        case Inst::Kind::PChoice:
          descend(PathStep::Kind::Left, inst.branch1, false);
          descend(PathStep::Kind::Right, inst.branch2, false);
          break;
        case Inst::Kind::While:
          descend(PathStep::Kind::Body, inst.branch1, true);
          break;
        default:
          break;
        }
      }
      if (!changed)
        return p;
    }
  }
};

} // namespace

SliceResult slice_fixpoint(const Prog &p, const ExpPtr &f, const ExpPtr &g, Mode mode,
                           const StateSpace &space, const SliceOptions &options) {
  GreedySlicer slicer{space, options};
  LocalSpec root;
  root.kind = mode;
  root.pre = f;
  root.post = g;
  SliceResult result;
  result.prog = slicer.run(p, {root}, false, SubprogramPath{});
  result.removals = std::move(slicer.removals);
  return result;
}

bool verify_slice(const Prog &candidate, const ExpPtr &f, const ExpPtr &g,
                  const Prog &original, Mode mode, const StateSpace &space) {
  if (!is_portion_of(candidate, original))
    return false;
  if (!discharge(vcg_mode(f, original, g, mode), space).valid)
    return true; // vacuous: the original never adhered to its spec
  return discharge(vcg_mode(f, candidate, g, mode), space).valid;
}

} // namespace pexp
