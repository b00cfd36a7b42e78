#include "pexp/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "pexp/parser.hpp"
#include "pexp/printer.hpp"
#include "pexp/semantics.hpp"
#include "pexp/slicegraph.hpp"
#include "pexp/slicing.hpp"
#include "pexp/vcgen.hpp"

namespace pexp {

namespace {

using nlohmann::json;

struct Loaded {
  ProgramFile file;
  Mode mode;
};

Loaded load(const std::string &path, const RunConfig &config) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Loaded loaded{parse_program_file(buffer.str()), Mode::Partial};
  loaded.mode = config.mode_override.value_or(loaded.file.mode);
  return loaded;
}

const char *color_code(const RunConfig &config, bool ok) {
  if (!config.color)
    return "";
  return ok ? "\033[32m" : "\033[31m";
}

const char *color_reset(const RunConfig &config) {
  return config.color ? "\033[0m" : "";
}

std::string verdict_str(const EntailmentResult &r) {
  switch (r.verdict) {
  case EntailmentResult::Verdict::Valid:
    return "valid";
  case EntailmentResult::Verdict::Invalid:
    return "invalid";
  case EntailmentResult::Verdict::RangeViolation:
    return "range-violation";
  }
  return "?";
}

std::string origins_str(const VC &vc) {
  std::string s;
  for (size_t i = 0; i < vc.origins.size(); ++i) {
    if (i)
      s += ", ";
    s += vc.origins[i];
  }
  return s;
}

json vc_json(const VC &vc) {
  json bindings = json::array();
  for (const auto &b : vc.bindings) {
    json values = json::array();
    for (const auto &v : b.values)
      values.push_back(to_string(v));
    bindings.push_back({{"var", b.var}, {"values", values}});
  }
  return {{"lhs", to_string(vc.lhs)},
          {"rhs", to_string(vc.rhs)},
          {"bindings", bindings},
          {"origins", vc.origins}};
}

json report_json(const DischargeReport &report) {
  json entries = json::array();
  for (const auto &e : report.entries) {
    json entry = vc_json(e.vc);
    entry["verdict"] = verdict_str(e.result);
    if (e.result.witness) {
      json w;
      w["state"] = to_string(e.result.witness->state);
      w["lhs"] = to_string(e.result.witness->lhs);
      w["rhs"] = to_string(e.result.witness->rhs);
      entry["witness"] = w;
    }
    entries.push_back(std::move(entry));
  }
  return {{"valid", report.valid}, {"vcs", entries}};
}

void print_report(const DischargeReport &report, const RunConfig &config, std::ostream &out) {
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const auto &e = report.entries[i];
    bool ok = e.result.valid();
    out << "VC " << i + 1 << ": " << color_code(config, ok) << verdict_str(e.result)
        << color_reset(config) << "  (" << origins_str(e.vc) << ")\n";
    out << "  " << to_string(e.vc.lhs) << "  =>  " << to_string(e.vc.rhs) << "\n";
    if (e.result.witness)
      out << "  witness: " << to_string(e.result.witness->state)
          << "  lhs=" << to_string(e.result.witness->lhs)
          << "  rhs=" << to_string(e.result.witness->rhs) << "\n";
  }
  out << "overall: " << color_code(config, report.valid)
      << (report.valid ? "valid" : "invalid") << color_reset(config) << "\n";
}

int guard_errors(const std::function<int()> &body, std::ostream &out) {
  try {
    return body();
  } catch (const ParseError &e) {
    out << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace

int cmd_check(const std::string &file, const RunConfig &config, std::ostream &out) {
  return guard_errors(
      [&]() {
        Loaded loaded = load(file, config);
        VCSet vcs = vcg_mode(loaded.file.pre, loaded.file.prog, loaded.file.post, loaded.mode);
        DischargeReport report = discharge(vcs, loaded.file.space);
        if (config.output_format == "json")
          out << report_json(report).dump(2) << "\n";
        else
          print_report(report, config, out);
        return report.valid ? 0 : 1;
      },
      out);
}

int cmd_slice(const std::string &file, const RunConfig &config, std::ostream &out) {
  return guard_errors(
      [&]() {
        Loaded loaded = load(file, config);
        const ProgramFile &pf = loaded.file;
        bool adheres =
            discharge(vcg_mode(pf.pre, pf.prog, pf.post, loaded.mode), pf.space).valid;
        if (!adheres) {
          out << "warning: program does not satisfy its specification; "
                 "nothing to slice\n";
          out << pretty_print(pf.prog);
          return 1;
        }

        Prog slice;
        std::vector<RemovalRecord> removals;
        std::optional<Rational> weight;
        if (config.greedy) {
          SliceOptions options;
          options.allow_trivial_loop_slices = config.allow_trivial_loop_slices;
          SliceResult result =
              slice_fixpoint(pf.prog, pf.pre, pf.post, loaded.mode, pf.space, options);
          slice = std::move(result.prog);
          removals = std::move(result.removals);
        } else {
          GraphOptions options;
          options.skip_weight = config.skip_weight;
          options.allow_trivial_loop_slices = config.allow_trivial_loop_slices;
          SliceGraph sg =
              build_slice_graph(pf.prog, pf.pre, pf.post, loaded.mode, pf.space, options);
          MinSliceResult result = min_slice(sg);
          slice = std::move(result.prog);
          removals = std::move(result.removals);
          weight = result.weight;
        }
        bool ok = verify_slice(slice, pf.pre, pf.post, pf.prog, loaded.mode, pf.space);

        if (config.output_format == "json") {
          json removals_json = json::array();
          for (const auto &r : removals)
            removals_json.push_back(to_string(r));
          json j = {{"slice", pretty_print(slice)},
                    {"removals", removals_json},
                    {"verified", ok}};
          if (weight)
            j["weight"] = to_string(*weight);
          out << j.dump(2) << "\n";
        } else {
          if (weight)
            out << "slice (weight " << to_string(*weight) << "):\n";
          else
            out << "slice:\n";
          out << pretty_print(slice);
          if (!removals.empty()) {
            out << "removals:\n";
            for (const auto &r : removals)
              out << "  " << to_string(r) << "\n";
          }
          if (!ok)
            out << "warning: slice failed verification\n";
        }
        return ok ? 0 : 1;
      },
      out);
}

int cmd_vcs(const std::string &file, const RunConfig &config, std::ostream &out) {
  return guard_errors(
      [&]() {
        Loaded loaded = load(file, config);
        VCSet vcs = vcg_mode(loaded.file.pre, loaded.file.prog, loaded.file.post, loaded.mode);
        json arr = json::array();
        for (const auto &vc : vcs.vcs)
          arr.push_back(vc_json(vc));
        out << json{{"mode", loaded.mode == Mode::Total ? "total" : "partial"},
                    {"vcs", arr}}
                   .dump(2)
            << "\n";
        return 0;
      },
      out);
}

int cmd_graph(const std::string &file, const RunConfig &config, std::ostream &out) {
  return guard_errors(
      [&]() {
        Loaded loaded = load(file, config);
        const ProgramFile &pf = loaded.file;
        GraphOptions options;
        options.skip_weight = config.skip_weight;
        options.allow_trivial_loop_slices = config.allow_trivial_loop_slices;
        SliceGraph sg =
            build_slice_graph(pf.prog, pf.pre, pf.post, loaded.mode, pf.space, options);
        if (config.output_format == "json") {
          json nodes = json::array();
          for (const auto &n : sg.graph.nodes) {
            const char *kinds[] = {"start", "end", "atomic", "bif", "fib",
                                   "pif",   "fip", "don",    "od",  "skip"};
            nodes.push_back({{"id", n.id},
                             {"kind", kinds[static_cast<int>(n.kind)]},
                             {"text", n.text}});
          }
          json edges = json::array();
          for (const auto &e : sg.graph.edges)
            edges.push_back({{"from", e.from},
                             {"to", e.to},
                             {"labels", e.labels},
                             {"weight", to_string(e.weight)},
                             {"shortcut", e.shortcut},
                             {"skip", e.skip_incident}});
          out << json{{"nodes", nodes}, {"edges", edges}}.dump(2) << "\n";
        } else {
          out << export_dot(sg);
        }
        return 0;
      },
      out);
}

int cmd_oracle(const std::string &file, const RunConfig &config, std::ostream &out) {
  return guard_errors(
      [&]() {
        Loaded loaded = load(file, config);
        const ProgramFile &pf = loaded.file;
        OracleOptions opts;
        opts.tol = config.tolerance;
        opts.max_iter = config.max_iter;
        TabulatedExpectation table =
            loaded.mode == Mode::Total ? wp_eval(pf.prog, pf.post, pf.space, opts)
                                       : wlp_eval(pf.prog, pf.post, pf.space, opts);
        for (size_t i = 0; i < pf.space.domains.size(); ++i)
          out << pf.space.domains[i].var << ",";
        out << "value\n";
        std::vector<State> states = pf.space.enumerate();
        for (const auto &s : states) {
          for (const auto &d : pf.space.domains)
            out << to_string(s.at(d.var)) << ",";
          const auto &v = table.values[pf.space.index_of(s)];
          out << (v ? to_string(*v) : "undefined") << "\n";
        }
        return 0;
      },
      out);
}

} // namespace pexp
