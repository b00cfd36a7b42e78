#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"
#include "pexp/slicing.hpp"

namespace pexp {

struct LcfgNode {
  enum class Kind { Start, End, Atomic, Bif, Fib, Pif, Fip, Don, Od, Skip };
  size_t id = 0;
  Kind kind = Kind::Atomic;
  std::string text; // instruction / guard / probability rendering
};

struct LcfgEdge {
  size_t from = 0;
  size_t to = 0;
  std::vector<std::string> labels; // one per spec in the owning region (tuple)
  Rational weight = 1;
  bool shortcut = false;     // entailment-justified bypass
  bool skip_incident = false; // touches an added skip node
};

/// Labelled control-flow graph: acyclic, one start (in-degree 0) and one
/// end (out-degree 0); edges labelled with suffix transformer values.
struct LCFG {
  std::vector<LcfgNode> nodes;
  std::vector<LcfgEdge> edges;
  size_t start = 0;
  size_t end = 0;
};

/// One subprogram (root, branch or loop body) with its induced local
/// specifications and the entailment-justified removals inside it.
struct SliceRegion {
  SubprogramPath path;
  Prog prog;
  std::vector<LocalSpec> specs;
  bool gated = false;            // loop body, trivial slice disallowed
  bool skip_replaceable = false; // all specs validate pre ⇒ post
  size_t skip_node = 0;          // id of the added skip node, if any

  /// Proper spans (j,k) of this subprogram that may be bypassed.
  std::vector<std::pair<size_t, size_t>> bypasses;

  size_t entry = 0, exit = 0;           // enclosing graph nodes
  std::vector<size_t> in_node, out_node; // per instruction
  std::vector<std::vector<SliceRegion>> children; // subregions per instruction
};

struct SliceGraph {
  LCFG graph;
  SliceRegion root;
  Rational skip_weight = Rational(1, 2);
};

struct GraphOptions {
  Rational skip_weight = Rational(1, 2);
  bool allow_trivial_loop_slices = false;
};

/// Control-flow graph labelled backward with suffix transformer values
/// (branches toward the local post, loop bodies toward the invariant).
[[nodiscard]] LCFG build_lcfg(const Prog &p, const ExpPtr &g, Mode mode);

/// LCFG plus skip nodes and shortcut edges for every entailment-justified
/// removal, discharged over the given state space.
[[nodiscard]] SliceGraph build_slice_graph(const Prog &p, const ExpPtr &f, const ExpPtr &g,
                                           Mode mode, const StateSpace &space,
                                           const GraphOptions &options = {});

struct MinSliceResult {
  Prog prog;
  Rational weight;
  std::vector<RemovalRecord> removals;
};

/// Least slice: collapses branch pairs innermost-first, then takes the
/// weighted shortest start-to-end path and reconstructs the program.
/// Weights count kept atomic instructions; replacing a subprogram by skip
/// costs the configured skip weight.
[[nodiscard]] MinSliceResult min_slice(const SliceGraph &sg);

[[nodiscard]] std::string export_dot(const LCFG &g);
[[nodiscard]] std::string export_dot(const SliceGraph &sg);

} // namespace pexp
