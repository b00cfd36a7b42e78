#include "pexp/semantics.hpp"

#include <random>

#include "pexp/printer.hpp"

namespace pexp {

namespace {

using Table = std::vector<std::optional<Rational>>;

enum class Which { Wp, Wlp };

struct Evaluator {
  const StateSpace &space;
  const std::vector<State> &states;
  const OracleOptions &opts;
  Which which;
  bool exact = true;

  Table transform(const Prog &p, Table g) {
    for (size_t i = p.insts.size(); i-- > 0;)
      g = transform_inst(p.insts[i], std::move(g));
    return g;
  }

  Table transform_inst(const Inst &inst, Table g) {
    switch (inst.kind) {
    case Inst::Kind::Skip:
      return g;
    case Inst::Kind::Assign: {
      // States whose update leaves the declared domain get an undefined
      // entry rather than an error: the instruction may be unreachable
      // from them, in which case nothing ever reads the entry.
      Table out(states.size());
      for (size_t i = 0; i < states.size(); ++i) {
        Rational v = eval_arith(inst.expr, states[i]);
        if (space.contains_value(inst.target, v))
          out[i] = g[space.index_of(state_update(states[i], inst.target, v))];
      }
      return out;
    }
    case Inst::Kind::Cond: {
      Table t = transform(*inst.branch1, g);
      Table e = transform(*inst.branch2, std::move(g));
      Table out(states.size());
      for (size_t i = 0; i < states.size(); ++i)
        out[i] = eval_bool(inst.guard, states[i]) ? t[i] : e[i];
      return out;
    }
    case Inst::Kind::PChoice: {
      Table l = transform(*inst.branch1, g);
      Table r = transform(*inst.branch2, std::move(g));
      Table out(states.size());
      for (size_t i = 0; i < states.size(); ++i)
        if (l[i] && r[i])
          out[i] = inst.prob * *l[i] + (1 - inst.prob) * *r[i];
      return out;
    }
    case Inst::Kind::While:
      return loop_fixpoint(inst, std::move(g));
    }
    throw EvalError("malformed instruction");
  }

  Table loop_fixpoint(const Inst &inst, Table g) {
    Table f(states.size(), which == Which::Wp ? Rational(0) : Rational(1));
    for (size_t iter = 0; iter < opts.max_iter; ++iter) {
      Table body = transform(*inst.branch1, f);
      Table next(states.size());
      Rational diff = 0;
      bool definedness_changed = false;
      for (size_t i = 0; i < states.size(); ++i) {
        next[i] = eval_bool(inst.guard, states[i]) ? body[i] : g[i];
        if (next[i].has_value() != f[i].has_value()) {
          definedness_changed = true;
        } else if (next[i]) {
          Rational d = *next[i] > *f[i] ? *next[i] - *f[i] : *f[i] - *next[i];
          if (d > diff)
            diff = d;
        }
      }
      f = std::move(next);
      if (definedness_changed)
        continue; // undefined entries only spread, so this stabilizes
      if (diff == 0)
        return f; // genuine fixpoint: still exact
      if (diff < opts.tol) {
        exact = false;
        return f;
      }
    }
    throw EvalError("loop fixpoint did not converge within " + std::to_string(opts.max_iter) +
                    " iterations for '" + to_string(inst) + "'");
  }
};

TabulatedExpectation run(const Prog &p, const ExpPtr &g, const StateSpace &space,
                         const OracleOptions &opts, Which which) {
  std::vector<State> states = space.enumerate();
  Table post(states.size());
  for (size_t i = 0; i < states.size(); ++i)
    post[i] = evaluate(g, states[i]);
  Evaluator ev{space, states, opts, which};
  TabulatedExpectation out;
  out.values = ev.transform(p, std::move(post));
  out.exact = ev.exact;
  return out;
}

} // namespace

TabulatedExpectation wp_eval(const Prog &p, const ExpPtr &g, const StateSpace &space,
                             const OracleOptions &opts) {
  return run(p, g, space, opts, Which::Wp);
}

TabulatedExpectation wlp_eval(const Prog &p, const ExpPtr &g, const StateSpace &space,
                              const OracleOptions &opts) {
  return run(p, g, space, opts, Which::Wlp);
}

namespace {

struct Runner {
  std::mt19937_64 rng;
  size_t steps = 0;
  size_t step_cap;

  struct StepCapExceeded {};

  [[nodiscard]] bool flip(const Rational &p) {
    // Exact comparison of p against a uniform rational k/2^64.
    Rational u = Rational(boost::multiprecision::cpp_int(rng())) /
                 (Rational(boost::multiprecision::cpp_int(1) << 64));
    return u < p;
  }

  void tick() {
    if (++steps > step_cap)
      throw StepCapExceeded{};
  }

  void exec(const Prog &p, State &s) {
    for (const auto &inst : p.insts)
      exec(inst, s);
  }

  void exec(const Inst &inst, State &s) {
    tick();
    switch (inst.kind) {
    case Inst::Kind::Skip:
      return;
    case Inst::Kind::Assign:
      s[inst.target] = eval_arith(inst.expr, s);
      return;
    case Inst::Kind::Cond:
      exec(eval_bool(inst.guard, s) ? *inst.branch1 : *inst.branch2, s);
      return;
    case Inst::Kind::PChoice:
      exec(flip(inst.prob) ? *inst.branch1 : *inst.branch2, s);
      return;
    case Inst::Kind::While:
      while (eval_bool(inst.guard, s)) {
        tick();
        exec(*inst.branch1, s);
      }
      return;
    }
  }
};

} // namespace

SimulationResult simulate(const Prog &p, const State &s, size_t n, uint64_t seed,
                          size_t step_cap) {
  SimulationResult result;
  Runner runner{std::mt19937_64(seed), 0, step_cap};
  for (size_t run = 0; run < n; ++run) {
    State cur = s;
    runner.steps = 0;
    try {
      runner.exec(p, cur);
      ++result.frequencies[cur];
      ++result.completed;
    } catch (const Runner::StepCapExceeded &) {
      ++result.censored;
    }
  }
  return result;
}

} // namespace pexp
