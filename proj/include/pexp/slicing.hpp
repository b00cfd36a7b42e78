#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"
#include "pexp/vcgen.hpp"

namespace pexp {

/// Addresses a nested subprogram: Index selects an instruction of the
/// current sequence, the branch selectors descend into it.  An empty path
/// denotes the root program.
struct PathStep {
  enum class Kind { Index, Then, Else, Left, Right, Body };
  Kind kind = Kind::Index;
  size_t index = 0; // 1-based, for Kind::Index
};

struct SubprogramPath {
  std::vector<PathStep> steps;
};

[[nodiscard]] std::string to_string(const SubprogramPath &path);

/// Pre/post pair induced on a nested subprogram by the root specification.
/// Total loops induce three specs on their body: a partial invariant spec
/// and two total specs (termination predicate, variant decrease); the
/// latter carries a snapshot binding for the variant.
struct LocalSpec {
  SubprogramPath path;
  Mode kind = Mode::Partial;
  ExpPtr pre;
  ExpPtr post;
  std::vector<LogicalBinding> bindings;
};

/// Removes instructions j..k (1-based, inclusive); removing everything
/// yields the skip program.
[[nodiscard]] Prog remove(size_t j, size_t k, const Prog &p);

/// All spans (j,k) whose suffix-transformer entailment
/// wpre_suffix(j) ⇒ wpre_suffix(k+1) discharges Valid over the space.
[[nodiscard]] std::vector<std::pair<size_t, size_t>>
top_level_candidates(const Prog &p, const ExpPtr &g, Mode mode, const StateSpace &space);

/// Local specs induced on one branch/body of instruction j (1-based) of p
/// by a spec already attached to p.  Total loops induce three body specs;
/// fresh_counter numbers the variant snapshot variables.
[[nodiscard]] std::vector<LocalSpec> induced_specs(const LocalSpec &parent, const Prog &p,
                                                   size_t j, PathStep::Kind branch,
                                                   size_t &fresh_counter);

/// Exhaustively enumerates the induced local specifications at every
/// branch/body path reachable by transitivity (root spec included).
[[nodiscard]] std::vector<LocalSpec> local_specifications(const Prog &p, const ExpPtr &f,
                                                          const ExpPtr &g, Mode mode);

[[nodiscard]] const Prog &subprogram_at(const Prog &p, const SubprogramPath &path);
[[nodiscard]] Prog replace_subprogram(const Prog &p, const SubprogramPath &path,
                                      const Prog &replacement);

struct SliceOptions {
  /// Replacing a whole loop body by skip is sound for partial correctness
  /// but usually unintended; off by default.
  bool allow_trivial_loop_slices = false;
};

/// One record per removal or skip-replacement performed by a slicer.
struct RemovalRecord {
  SubprogramPath parent; // subprogram the span lives in
  size_t j = 0, k = 0;   // removed span (1-based, inclusive)
  bool to_skip = false;  // whole subprogram replaced by skip
};

[[nodiscard]] std::string to_string(const RemovalRecord &record);

struct SliceResult {
  Prog prog;
  std::vector<RemovalRecord> removals;
};

/// Greedy deterministic slicer: repeatedly removes the leftmost-longest
/// valid top-level span, then recurses into branches/bodies via their
/// induced local specifications, until nothing changes.
[[nodiscard]] SliceResult slice_fixpoint(const Prog &p, const ExpPtr &f, const ExpPtr &g,
                                         Mode mode, const StateSpace &space,
                                         const SliceOptions &options = {});

/// True iff candidate is a syntactic portion of original and preserves the
/// VCGen verdict for (f, g).
[[nodiscard]] bool verify_slice(const Prog &candidate, const ExpPtr &f, const ExpPtr &g,
                                const Prog &original, Mode mode, const StateSpace &space);

} // namespace pexp
