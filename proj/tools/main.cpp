#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pexp/cli.hpp"

namespace {

struct RawOptions {
  std::string file;
  std::string mode;
  std::string format;
  std::string tolerance;
  std::string skip_weight;
  unsigned long long max_iter = 100000;
  unsigned long long seed = 0;
  bool allow_trivial = false;
  bool greedy = false;
};

void add_common(CLI::App *cmd, RawOptions &raw) {
  cmd->add_option("file", raw.file, "input program file")->required();
  cmd->add_option("--mode", raw.mode, "override spec mode: partial|total")
      ->check(CLI::IsMember({"partial", "total"}));
  cmd->add_option("--format", raw.format, "output format: text|json|dot|csv");
  cmd->add_option("--tolerance", raw.tolerance, "loop value-iteration tolerance (rational)");
  cmd->add_option("--max-iter", raw.max_iter, "loop value-iteration cap");
  cmd->add_option("--seed", raw.seed, "PRNG seed for sampling paths");
  cmd->add_option("--skip-weight", raw.skip_weight, "weight of skip replacements (rational)");
  cmd->add_flag("--allow-trivial-loop-slices", raw.allow_trivial,
                "permit replacing whole loop bodies by skip");
}

int to_config(const RawOptions &raw, pexp::RunConfig &config, std::ostream &err) {
  if (raw.mode == "partial")
    config.mode_override = pexp::Mode::Partial;
  else if (raw.mode == "total")
    config.mode_override = pexp::Mode::Total;
  if (!raw.format.empty())
    config.output_format = raw.format;
  if (!raw.tolerance.empty()) {
    auto t = pexp::parse_rational(raw.tolerance);
    if (!t || *t <= 0) {
      err << "error: --tolerance must be a positive rational\n";
      return 2;
    }
    config.tolerance = *t;
  }
  if (!raw.skip_weight.empty()) {
    auto w = pexp::parse_rational(raw.skip_weight);
    if (!w || *w < 0) {
      err << "error: --skip-weight must be a nonnegative rational\n";
      return 2;
    }
    config.skip_weight = *w;
  }
  if (raw.max_iter == 0) {
    err << "error: --max-iter must be at least 1\n";
    return 2;
  }
  config.max_iter = raw.max_iter;
  config.seed = raw.seed;
  config.allow_trivial_loop_slices = raw.allow_trivial;
  config.greedy = raw.greedy;
  if (const char *color = std::getenv("PEXP_COLOR"))
    config.color = std::string(color) == "1";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"pexp-slicer: specification-based slicing of probabilistic programs"};
  app.require_subcommand(1);

  RawOptions raw;
  CLI::App *check = app.add_subcommand("check", "discharge the verification conditions");
  add_common(check, raw);
  CLI::App *slice = app.add_subcommand("slice", "compute a specification-based slice");
  add_common(slice, raw);
  slice->add_flag("--greedy", raw.greedy, "use the greedy fixpoint slicer");
  CLI::App *vcs = app.add_subcommand("vcs", "dump verification conditions as JSON");
  add_common(vcs, raw);
  CLI::App *graph = app.add_subcommand("graph", "export the slice graph (DOT or JSON)");
  add_common(graph, raw);
  CLI::App *oracle = app.add_subcommand("oracle", "tabulate the semantic w(l)p as CSV");
  add_common(oracle, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  pexp::RunConfig config;
  if (int code = to_config(raw, config, std::cerr); code != 0)
    return code;

  if (check->parsed())
    return pexp::cmd_check(raw.file, config, std::cout);
  if (slice->parsed())
    return pexp::cmd_slice(raw.file, config, std::cout);
  if (vcs->parsed())
    return pexp::cmd_vcs(raw.file, config, std::cout);
  if (graph->parsed())
    return pexp::cmd_graph(raw.file, config, std::cout);
  if (oracle->parsed())
    return pexp::cmd_oracle(raw.file, config, std::cout);
  return 2;
}
