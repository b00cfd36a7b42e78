#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "pexp/ast.hpp"
#include "pexp/rational.hpp"

namespace pexp {

/// Options shared by every subcommand.  Exit codes: 0 success, 1 semantic
/// failure (invalid VC / specification not met), 2 usage or parse error.
struct RunConfig {
  std::optional<Mode> mode_override; // file's spec mode unless overridden
  Rational tolerance = Rational(1, 1000000000);
  size_t max_iter = 100000;
  Rational skip_weight = Rational(1, 2);
  bool allow_trivial_loop_slices = false;
  bool greedy = false; // slice: use the greedy fixpoint instead of the graph
  uint64_t seed = 0;
  std::string output_format = "text"; // text|json|dot|csv
  bool color = false;
};

int cmd_check(const std::string &file, const RunConfig &config, std::ostream &out);
int cmd_slice(const std::string &file, const RunConfig &config, std::ostream &out);
int cmd_vcs(const std::string &file, const RunConfig &config, std::ostream &out);
int cmd_graph(const std::string &file, const RunConfig &config, std::ostream &out);
int cmd_oracle(const std::string &file, const RunConfig &config, std::ostream &out);

} // namespace pexp
