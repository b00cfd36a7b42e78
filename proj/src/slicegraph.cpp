#include "pexp/slicegraph.hpp"

#include <optional>

#include "pexp/printer.hpp"
#include "pexp/vcgen.hpp"

namespace pexp {

namespace {

bool same_spec(const LocalSpec &a, const LocalSpec &b) {
  return a.kind == b.kind && equal(a.pre, b.pre) && equal(a.post, b.post) &&
         a.bindings.size() == b.bindings.size();
}

struct Builder {
  LCFG graph;
  const StateSpace *space = nullptr; // null: bare LCFG, no shortcut edges
  GraphOptions options;
  size_t fresh_counter = 0;

  size_t add_node(LcfgNode::Kind kind, std::string text) {
    LcfgNode n;
    n.id = graph.nodes.size();
    n.kind = kind;
    n.text = std::move(text);
    graph.nodes.push_back(n);
    return n.id;
  }

  void add_edge(size_t from, size_t to, std::vector<std::string> labels, Rational weight,
                bool shortcut, bool skip_incident) {
    LcfgEdge e;
    e.from = from;
    e.to = to;
    e.labels = std::move(labels);
    e.weight = std::move(weight);
    e.shortcut = shortcut;
    e.skip_incident = skip_incident;
    graph.edges.push_back(std::move(e));
  }

  SliceRegion build_region(const Prog &prog, std::vector<LocalSpec> specs, size_t entry,
                           size_t exit, const SubprogramPath &path, bool gated) {
    SliceRegion region;
    region.path = path;
    region.prog = prog;
    region.specs = specs;
    region.gated = gated;
    region.entry = entry;
    region.exit = exit;

    size_t n = prog.insts.size();
    region.children.resize(n);

    // Nodes for each instruction, recursing into branches/bodies.
    for (size_t j = 1; j <= n; ++j) {
      const Inst &inst = prog.insts[j - 1];
      auto child_specs = [&](PathStep::Kind branch) {
        std::vector<LocalSpec> out;
        for (const auto &s : specs)
          for (auto &c : induced_specs(s, prog, j, branch, fresh_counter)) {
            bool dup = false;
            for (const auto &have : out)
              dup = dup || same_spec(have, c);
            if (!dup)
              out.push_back(std::move(c));
          }
        return out;
      };
      auto child_path = [&](PathStep::Kind branch) {
        SubprogramPath p = path;
        p.steps.push_back(PathStep{PathStep::Kind::Index, j});
        p.steps.push_back(PathStep{branch, 0});
        return p;
      };
      switch (inst.kind) {
      case Inst::Kind::Skip:
      case Inst::Kind::Assign: {
        size_t node = add_node(LcfgNode::Kind::Atomic, to_string(inst));
        region.in_node.push_back(node);
        region.out_node.push_back(node);
        break;
      }
      case Inst::Kind::Cond: {
        size_t bif = add_node(LcfgNode::Kind::Bif, "if (" + to_string(inst.guard) + ")");
        size_t fib = add_node(LcfgNode::Kind::Fib, "fi");
        region.in_node.push_back(bif);
        region.out_node.push_back(fib);
        region.children[j - 1].push_back(build_region(
            *inst.branch1, child_specs(PathStep::Kind::Then), bif, fib,
            child_path(PathStep::Kind::Then), false));
        region.children[j - 1].push_back(build_region(
            *inst.branch2, child_specs(PathStep::Kind::Else), bif, fib,
            child_path(PathStep::Kind::Else), false));
        break;
      }
      case Inst::Kind::PChoice: {
        size_t pif = add_node(LcfgNode::Kind::Pif, "[" + to_string(inst.prob) + "]");
        size_t fip = add_node(LcfgNode::Kind::Fip, "fip");
        region.in_node.push_back(pif);
        region.out_node.push_back(fip);
        region.children[j - 1].push_back(build_region(
            *inst.branch1, child_specs(PathStep::Kind::Left), pif, fip,
            child_path(PathStep::Kind::Left), false));
        region.children[j - 1].push_back(build_region(
            *inst.branch2, child_specs(PathStep::Kind::Right), pif, fip,
            child_path(PathStep::Kind::Right), false));
        break;
      }
      case Inst::Kind::While: {
        size_t don = add_node(LcfgNode::Kind::Don, "while (" + to_string(inst.guard) + ")");
        size_t od = add_node(LcfgNode::Kind::Od, "od");
        region.in_node.push_back(don);
        region.out_node.push_back(od);
        region.children[j - 1].push_back(build_region(
            *inst.branch1, child_specs(PathStep::Kind::Body), don, od,
            child_path(PathStep::Kind::Body), !options.allow_trivial_loop_slices));
        break;
      }
      }
    }

    // Suffix transformer values, one row per position, one column per spec.
    std::vector<std::vector<ExpPtr>> suffix(n + 1);
    for (size_t j = 1; j <= n + 1; ++j)
      for (const auto &s : specs)
        suffix[j - 1].push_back(wpre_suffix(j, prog, s.post, s.kind));
    auto labels_at = [&](size_t j) {
      std::vector<std::string> out;
      for (const auto &e : suffix[j - 1])
        out.push_back(to_string(e));
      return out;
    };

    // Connector edges entry -> i1 -> ... -> in -> exit.
    for (size_t j = 1; j <= n + 1; ++j) {
      size_t from = j == 1 ? entry : region.out_node[j - 2];
      size_t to = j == n + 1 ? exit : region.in_node[j - 1];
      add_edge(from, to, labels_at(j), 1, false, false);
    }

    if (!space)
      return region;

    // Whole-subprogram skip replacement: pre ⇒ post for every spec.
    if (!gated) {
      bool ok = true;
      for (const auto &s : specs)
        ok = ok && entails(s.pre, s.post, *space, s.bindings).valid();
      if (ok) {
        region.skip_replaceable = true;
        region.skip_node = add_node(LcfgNode::Kind::Skip, "skip");
        std::vector<std::string> pres, posts;
        for (const auto &s : specs) {
          pres.push_back(to_string(s.pre));
          posts.push_back(to_string(s.post));
        }
        add_edge(entry, region.skip_node, pres, options.skip_weight, true, true);
        add_edge(region.skip_node, exit, posts, options.skip_weight, true, true);
      }
    }

    // Span bypasses (proper spans only): suffix entailment, or the local
    // pre for spans starting at the first instruction.
    for (size_t j = 1; j <= n; ++j)
      for (size_t k = j; k <= n; ++k) {
        if (j == 1 && k == n)
          continue;
        bool ok = true;
        for (size_t si = 0; si < specs.size() && ok; ++si) {
          const auto &s = specs[si];
          ok = entails(suffix[j - 1][si], suffix[k][si], *space, s.bindings).valid() ||
               (j == 1 && entails(s.pre, suffix[k][si], *space, s.bindings).valid());
        }
        if (ok) {
          region.bypasses.emplace_back(j, k);
          size_t from = j == 1 ? entry : region.out_node[j - 2];
          size_t to = k == n ? exit : region.in_node[k];
          add_edge(from, to, labels_at(k + 1), 1, true, false);
        }
      }
    return region;
  }
};

LocalSpec root_spec(const ExpPtr &f, const ExpPtr &g, Mode mode) {
  LocalSpec s;
  s.kind = mode;
  s.pre = f;
  s.post = g;
  return s;
}

} // namespace

LCFG build_lcfg(const Prog &p, const ExpPtr &g, Mode mode) {
  Builder b;
  size_t start = b.add_node(LcfgNode::Kind::Start, "start");
  size_t end = b.add_node(LcfgNode::Kind::End, "end");
  b.graph.start = start;
  b.graph.end = end;
  (void)b.build_region(p, {root_spec(Expectation::constant(0), g, mode)}, start, end,
                       SubprogramPath{}, false);
  return std::move(b.graph);
}

SliceGraph build_slice_graph(const Prog &p, const ExpPtr &f, const ExpPtr &g, Mode mode,
                             const StateSpace &space, const GraphOptions &options) {
  Builder b;
  b.space = &space;
  b.options = options;
  size_t start = b.add_node(LcfgNode::Kind::Start, "start");
  size_t end = b.add_node(LcfgNode::Kind::End, "end");
  b.graph.start = start;
  b.graph.end = end;
  SliceGraph sg;
  sg.root = b.build_region(p, {root_spec(f, g, mode)}, start, end, SubprogramPath{}, false);
  sg.graph = std::move(b.graph);
  sg.skip_weight = options.skip_weight;
  return sg;
}

namespace {

struct PathState {
  Rational weight = 0;
  bool kept_any = false;
  std::vector<Inst> content;
  std::vector<RemovalRecord> removals;
};

struct RegionCost {
  Rational weight;
  Prog prog;
  std::vector<RemovalRecord> removals;
};

RegionCost collapse(const SliceRegion &region, const Rational &skip_weight);

/// Cost and reconstruction for keeping instruction j (collapsing its
/// branches to their own least slices first).
RegionCost keep_cost(const SliceRegion &region, size_t j, const Rational &skip_weight) {
  const Inst &inst = region.prog.insts[j - 1];
  RegionCost out;
  switch (inst.kind) {
  case Inst::Kind::Skip:
  case Inst::Kind::Assign:
    out.weight = 1;
    out.prog.insts.push_back(inst);
    return out;
  case Inst::Kind::Cond:
  case Inst::Kind::PChoice: {
    RegionCost l = collapse(region.children[j - 1][0], skip_weight);
    RegionCost r = collapse(region.children[j - 1][1], skip_weight);
    out.weight = l.weight + r.weight;
    Inst copy = inst;
    copy.branch1 = std::make_shared<Prog>(std::move(l.prog));
    copy.branch2 = std::make_shared<Prog>(std::move(r.prog));
    out.prog.insts.push_back(std::move(copy));
    out.removals = std::move(l.removals);
    out.removals.insert(out.removals.end(), r.removals.begin(), r.removals.end());
    return out;
  }
  case Inst::Kind::While: {
    RegionCost b = collapse(region.children[j - 1][0], skip_weight);
    out.weight = b.weight;
    Inst copy = inst;
    copy.branch1 = std::make_shared<Prog>(std::move(b.prog));
    out.prog.insts.push_back(std::move(copy));
    out.removals = std::move(b.removals);
    return out;
  }
  }
  return out;
}

RegionCost collapse(const SliceRegion &region, const Rational &skip_weight) {
  size_t n = region.prog.insts.size();
  // Shortest path over positions 0..n; two tracks so that gated regions
  // can insist on keeping at least one instruction.
  std::vector<std::optional<PathState>> best_any(n + 1), best_kept(n + 1);
  best_any[0] = PathState{};
  std::vector<RegionCost> keeps;
  keeps.reserve(n);
  for (size_t j = 1; j <= n; ++j)
    keeps.push_back(keep_cost(region, j, skip_weight));

  auto relax = [](std::optional<PathState> &slot, PathState cand) {
    if (!slot || cand.weight < slot->weight)
      slot = std::move(cand);
  };

  for (size_t v = 1; v <= n; ++v) {
    auto step_keep = [&](const std::optional<PathState> &from) {
      if (!from)
        return std::optional<PathState>{};
      PathState next = *from;
      next.weight += keeps[v - 1].weight;
      next.kept_any = true;
      next.content.insert(next.content.end(), keeps[v - 1].prog.insts.begin(),
                          keeps[v - 1].prog.insts.end());
      next.removals.insert(next.removals.end(), keeps[v - 1].removals.begin(),
                           keeps[v - 1].removals.end());
      return std::optional<PathState>{std::move(next)};
    };
    // Keeping an instruction lands on the kept track regardless of where
    // the path came from (and every kept path is also an "any" path).
    if (auto cand = step_keep(best_any[v - 1])) {
      relax(best_any[v], *cand);
      relax(best_kept[v], *cand);
    }
    if (auto cand = step_keep(best_kept[v - 1])) {
      relax(best_any[v], *cand);
      relax(best_kept[v], *cand);
    }
    for (const auto &[j, k] : region.bypasses) {
      if (k != v)
        continue;
      auto step_bypass = [&](const std::optional<PathState> &from) {
        if (!from)
          return std::optional<PathState>{};
        PathState next = *from;
        RemovalRecord rec;
        rec.parent = region.path;
        rec.j = j;
        rec.k = k;
        next.removals.push_back(rec);
        return std::optional<PathState>{std::move(next)};
      };
      if (auto cand = step_bypass(best_any[j - 1]))
        relax(best_any[v], *cand);
      if (auto cand = step_bypass(best_kept[j - 1])) {
        relax(best_any[v], *cand);
        relax(best_kept[v], *cand);
      }
    }
  }

  const std::optional<PathState> &final_state = region.gated ? best_kept[n] : best_any[n];
  RegionCost out;
  if (region.skip_replaceable && (!final_state || skip_weight < final_state->weight)) {
    out.weight = skip_weight;
    out.prog.insts.push_back(make_skip());
    RemovalRecord rec;
    rec.parent = region.path;
    rec.j = 1;
    rec.k = n;
    rec.to_skip = true;
    out.removals.push_back(rec);
    return out;
  }
  // A gated region always has a kept path (keeping everything).
  out.weight = final_state->weight;
  out.removals = final_state->removals;
  if (final_state->content.empty()) {
    out.prog.insts.push_back(make_skip());
  } else {
    out.prog.insts = final_state->content;
  }
  return out;
}

} // namespace

MinSliceResult min_slice(const SliceGraph &sg) {
  RegionCost cost = collapse(sg.root, sg.skip_weight);
  MinSliceResult out;
  out.prog = std::move(cost.prog);
  out.weight = std::move(cost.weight);
  out.removals = std::move(cost.removals);
  return out;
}

namespace {

std::string dot_of(const LCFG &g) {
  std::string out = "digraph slice {\n  rankdir=LR;\n";
  for (const auto &n : g.nodes) {
    std::string shape = "box";
    if (n.kind == LcfgNode::Kind::Start || n.kind == LcfgNode::Kind::End)
      shape = "doublecircle";
    else if (n.kind == LcfgNode::Kind::Bif || n.kind == LcfgNode::Kind::Fib ||
             n.kind == LcfgNode::Kind::Pif || n.kind == LcfgNode::Kind::Fip ||
             n.kind == LcfgNode::Kind::Don || n.kind == LcfgNode::Kind::Od)
      shape = "diamond";
    else if (n.kind == LcfgNode::Kind::Skip)
      shape = "ellipse";
    out += "  n" + std::to_string(n.id) + " [shape=" + shape + ", label=\"" + n.text + "\"];\n";
  }
  for (const auto &e : g.edges) {
    std::string label;
    for (size_t i = 0; i < e.labels.size(); ++i) {
      if (i)
        label += "; ";
      label += e.labels[i];
    }
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
           label + "\", weight=\"" + to_string(e.weight) + "\"";
    if (e.shortcut)
      out += ", style=bold";
    if (e.skip_incident)
      out += ", color=gray";
    out += "];\n";
  }
  out += "}\n";
  return out;
}

} // namespace

std::string export_dot(const LCFG &g) {
  return dot_of(g);
}

std::string export_dot(const SliceGraph &sg) {
  return dot_of(sg.graph);
}

} // namespace pexp
