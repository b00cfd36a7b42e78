#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pexp/ast.hpp"
#include "pexp/expectation.hpp"
#include "pexp/state.hpp"

namespace pexp {

/// An expectation tabulated over a finite state space; indexed by
/// StateSpace::index_of.  `exact` is false once a loop fixpoint has been
/// approximated by value iteration.  An entry is empty when the value is
/// undefined at that state: some execution starting there drives an
/// assignment outside its declared domain.
struct TabulatedExpectation {
  std::vector<std::optional<Rational>> values;
  bool exact = true;

  [[nodiscard]] const std::optional<Rational> &at(const StateSpace &space, const State &s) const {
    return values[space.index_of(s)];
  }
};

struct OracleOptions {
  Rational tol = Rational(1, 1000000000); // 1e-9
  size_t max_iter = 100000;
};

/// Weakest pre-expectation (total correctness): loop fixpoints iterated
/// upward from the constant-0 table.  Throws EvalError when an assignment
/// leaves the declared domain or iteration fails to converge.
[[nodiscard]] TabulatedExpectation wp_eval(const Prog &p, const ExpPtr &g,
                                           const StateSpace &space,
                                           const OracleOptions &opts = {});

/// Weakest liberal pre-expectation (partial correctness): loop fixpoints
/// iterated downward from the constant-1 table.
[[nodiscard]] TabulatedExpectation wlp_eval(const Prog &p, const ExpPtr &g,
                                            const StateSpace &space,
                                            const OracleOptions &opts = {});

struct SimulationResult {
  std::map<State, size_t> frequencies; // final states of completed runs
  size_t completed = 0;
  size_t censored = 0; // runs cut off by the step cap
};

/// Runs the program n times from s with a seeded mt19937_64; probabilistic
/// choices compare the probability against a uniform rational k/2^64.
[[nodiscard]] SimulationResult simulate(const Prog &p, const State &s, size_t n,
                                        uint64_t seed, size_t step_cap = 1000000);

} // namespace pexp
