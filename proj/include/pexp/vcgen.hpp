#pragma once

#include <string>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"

namespace pexp {

/// One verification condition: an entailment claim lhs ⇒ rhs, possibly
/// under finite-range logical bindings (variant snapshot variables), with
/// provenance tags naming the rule and instruction that produced it.
struct VC {
  ExpPtr lhs;
  ExpPtr rhs;
  std::vector<LogicalBinding> bindings;
  std::vector<std::string> origins; // merged when duplicates collapse
};

/// Ordered set of VCs; structurally equal claims are merged (origins kept).
struct VCSet {
  std::vector<VC> vcs;

  void add(VC vc);
  void add_all(const VCSet &other);
  [[nodiscard]] size_t size() const { return vcs.size(); }
};

// Partial-correctness transformer: structural recursion, loops yield the
// annotated invariant.
[[nodiscard]] ExpPtr wpre(const Prog &p, const ExpPtr &g);
[[nodiscard]] VCSet vc(const Prog &p, const ExpPtr &g);
[[nodiscard]] VCSet vcg(const ExpPtr &f, const Prog &p, const ExpPtr &g);

// Total-correctness variants: loops yield [T]·I and contribute variant /
// termination obligations in addition to the partial invariant obligations.
[[nodiscard]] ExpPtr wpre_total(const Prog &p, const ExpPtr &g);
[[nodiscard]] VCSet vc_total(const Prog &p, const ExpPtr &g);
[[nodiscard]] VCSet vcg_total(const ExpPtr &f, const Prog &p, const ExpPtr &g);

// Suffix forms over instructions j..n, 1-based; j = n+1 denotes the empty
// suffix (wpre yields g, the VC sets are empty).  Prefix form covers
// instructions 1..j; j = 0 yields the single claim f ⇒ g.
[[nodiscard]] ExpPtr wpre_suffix(size_t j, const Prog &p, const ExpPtr &g,
                                 Mode mode = Mode::Partial);
[[nodiscard]] VCSet vc_suffix(size_t j, const Prog &p, const ExpPtr &g,
                              Mode mode = Mode::Partial);
[[nodiscard]] VCSet vcg_suffix(size_t j, const ExpPtr &f, const Prog &p, const ExpPtr &g,
                               Mode mode = Mode::Partial);
[[nodiscard]] VCSet vcg_prefix(size_t j, const ExpPtr &f, const Prog &p, const ExpPtr &g,
                               Mode mode = Mode::Partial);

/// Mode-dispatching helpers.
[[nodiscard]] ExpPtr wpre_mode(const Prog &p, const ExpPtr &g, Mode mode);
[[nodiscard]] VCSet vcg_mode(const ExpPtr &f, const Prog &p, const ExpPtr &g, Mode mode);

struct DischargeEntry {
  VC vc;
  EntailmentResult result;
};

struct DischargeReport {
  std::vector<DischargeEntry> entries;
  bool valid = true;
};

/// Applies entails to every VC; overall valid iff all claims hold.
[[nodiscard]] DischargeReport discharge(const VCSet &vcs, const StateSpace &space);

} // namespace pexp
