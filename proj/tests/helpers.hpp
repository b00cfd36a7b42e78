#pragma once

#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pexp/expectation.hpp"
#include "pexp/parser.hpp"
#include "pexp/vcgen.hpp"

namespace pexp::testing {

inline std::string fixture_path(const std::string &name) {
  return std::string(PEXP_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open fixture: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ProgramFile load_fixture(const std::string &name) {
  return parse_program_file(read_file(fixture_path(name)));
}

/// Random program/expectation generator over the fixed grid
/// x in {0,1,2}, y in {0,1}.  Every assignment is closed under the grid, so
/// tabulated transformers are defined everywhere.
struct Gen {
  std::mt19937 rng;

  explicit Gen(unsigned seed) : rng(seed) {}

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }

  bool coin() { return pick(2) == 0; }

  static StateSpace space() {
    StateSpace s;
    s.domains.push_back(VarDomain{"x", {Rational(0), Rational(1), Rational(2)}});
    s.domains.push_back(VarDomain{"y", {Rational(0), Rational(1)}});
    return s;
  }

  Inst atom() {
    static const char *sources[] = {
        "skip",       "x := 0",     "x := 1",     "x := 2", "x := y",
        "x := 1 - y", "x := y + 1", "x := 2 - x", "y := 0", "y := 1",
        "y := 1 - y",
    };
    return parse_program(sources[pick(std::size(sources))]).insts[0];
  }

  BoolPtr guard() {
    static const char *sources[] = {
        "x = 0", "x >= 1", "x <= 1", "y = 1", "y = 0", "x + y >= 2", "!(x = 2)", "x = y",
    };
    return parse_bool(sources[pick(std::size(sources))]);
  }

  ExpPtr expectation() {
    switch (pick(7)) {
    case 0:
      return parse_expectation("0");
    case 1:
      return parse_expectation("1");
    case 2:
      return parse_expectation("1/2");
    case 3:
      return Expectation::indicator(guard());
    case 4:
      return Expectation::scale(Rational(1, 2), Expectation::indicator(guard()));
    case 5:
      return Expectation::sum(
          {Expectation::scale(Rational(1, 2), Expectation::indicator(guard())),
           Expectation::scale(Rational(1, 2), Expectation::indicator(guard()))});
    default:
      return Expectation::sum(
          {parse_expectation("1/4"),
           Expectation::scale(Rational(1, 2), Expectation::indicator(guard()))});
    }
  }

  Prog atoms(size_t max_len) {
    Prog p;
    size_t len = 1 + pick(max_len);
    for (size_t i = 0; i < len; ++i)
      p.insts.push_back(atom());
    return p;
  }

  Inst loop() {
    // Variant [G] with bounds 0..1 decreases whenever the body leaves the
    // guard; the probability annotation is deliberately optimistic at times
    // so both verdicts occur.
    BoolPtr g = guard();
    TotalLoopAnnotation t;
    t.terminates = BoolExpr::truth(true);
    t.variant = ArithExpr::indicator(g);
    t.lower = Rational(0);
    t.upper = Rational(1);
    t.eps = coin() ? Rational(1, 2) : Rational(1, 4);
    return make_while(g, expectation(), atoms(2), t);
  }

  Inst inst(bool allow_loops) {
    size_t roll = pick(10);
    if (roll < 6)
      return atom();
    if (roll < 8)
      return make_cond(guard(), atoms(2), atoms(2));
    if (roll == 8 || !allow_loops) {
      Rational probs[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
      return make_pchoice(atoms(2), probs[pick(3)], atoms(2));
    }
    return loop();
  }

  Prog prog(bool allow_loops) {
    Prog p;
    size_t len = 1 + pick(3);
    for (size_t i = 0; i < len; ++i)
      p.insts.push_back(inst(allow_loops));
    return p;
  }

  Mode mode() { return coin() ? Mode::Partial : Mode::Total; }
};

inline bool valid_set(const VCSet &vcs, const StateSpace &space) {
  return discharge(vcs, space).valid;
}

inline ExpPtr half(const ExpPtr &e) {
  return simplify(Expectation::scale(Rational(1, 2), e));
}

/// 1/2 * e + 1/2, which dominates e on [0,1].
inline ExpPtr relax(const ExpPtr &e) {
  return simplify(Expectation::sum({half(e), Expectation::constant(Rational(1, 2))}));
}

inline bool same_on(const ExpPtr &a, const ExpPtr &b, const StateSpace &space) {
  return entails(a, b, space).valid() && entails(b, a, space).valid();
}

inline bool contains_loop(const Prog &p) {
  for (const auto &inst : p.insts) {
    if (inst.kind == Inst::Kind::While)
      return true;
    if (inst.branch1 && contains_loop(*inst.branch1))
      return true;
    if (inst.branch2 && contains_loop(*inst.branch2))
      return true;
  }
  return false;
}

/// Verdict of the suffix claims from position k with the loop-exit carrier
/// pre; for the empty suffix this degenerates to the bare entailment.
inline bool suffix_holds(size_t k, const ExpPtr &pre, const Prog &p, const ExpPtr &g,
                         Mode mode, const StateSpace &space) {
  if (k == p.insts.size() + 1)
    return entails(pre, g, space).valid();
  return valid_set(vcg_suffix(k, pre, p, g, mode), space);
}

/// Alternative characterization of dischargeability, split at the compound
/// instruction in position j (1-based).
inline bool decomposed(const ExpPtr &f, const Prog &p, const ExpPtr &g, Mode mode, size_t j,
                       const StateSpace &space) {
  const Inst &inst = p.insts[j - 1];
  if (inst.kind == Inst::Kind::Cond || inst.kind == Inst::Kind::PChoice) {
    ExpPtr w_next = wpre_suffix(j + 1, p, g, mode);
    ExpPtr w_here = wpre_suffix(j, p, g, mode);
    return valid_set(vc_suffix(j + 1, p, g, mode), space) &&
           valid_set(vc_suffix(1, *inst.branch1, w_next, mode), space) &&
           valid_set(vc_suffix(1, *inst.branch2, w_next, mode), space) &&
           valid_set(vcg_prefix(j - 1, f, p, w_here, mode), space);
  }

  if (inst.kind != Inst::Kind::While)
    throw std::logic_error("decomposed: expected a compound instruction");
  ExpPtr inv = inst.invariant;
  ExpPtr enter = simplify(Expectation::product(Expectation::indicator(inst.guard), inv));
  ExpPtr exit_carrier = simplify(
      Expectation::product(Expectation::indicator(BoolExpr::negation(inst.guard)), inv));
  bool ok = suffix_holds(j + 1, exit_carrier, p, g, mode, space) &&
            valid_set(vcg(enter, *inst.branch1, inv), space);
  if (mode == Mode::Partial)
    return ok && valid_set(vcg_prefix(j - 1, f, p, inv, mode), space);

  const TotalLoopAnnotation &t = *inst.total;
  BoolPtr gt = BoolExpr::conj(inst.guard, t.terminates);
  ExpPtr carried = simplify(
      Expectation::product(Expectation::indicator(t.terminates), inv));
  ok = ok && valid_set(vcg_total(Expectation::indicator(gt), *inst.branch1,
                                 Expectation::indicator(t.terminates)),
                       space);
  BoolPtr in_bounds = BoolExpr::conj(
      BoolExpr::compare(BoolExpr::Cmp::Le, ArithExpr::constant(t.lower), t.variant),
      BoolExpr::compare(BoolExpr::Cmp::Le, t.variant, ArithExpr::constant(t.upper)));
  ok = ok &&
       entails(Expectation::indicator(gt), Expectation::indicator(in_bounds), space).valid();
  // The snapshot quantifier unrolled into one claim per value.
  for (Rational c = t.lower; c <= t.upper; c += 1) {
    BoolPtr at_c = BoolExpr::conj(
        gt, BoolExpr::compare(BoolExpr::Cmp::Eq, t.variant, ArithExpr::constant(c)));
    ExpPtr decreased = Expectation::indicator(
        BoolExpr::compare(BoolExpr::Cmp::Lt, t.variant, ArithExpr::constant(c)));
    ok = ok && valid_set(vcg_total(simplify(Expectation::scale(
                                       t.eps, Expectation::indicator(at_c))),
                                   *inst.branch1, decreased),
                         space);
  }
  return ok && valid_set(vcg_prefix(j - 1, f, p, carried, mode), space);
}

} // namespace pexp::testing
