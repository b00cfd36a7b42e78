#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "pexp/parser.hpp"
#include "pexp/printer.hpp"
#include "pexp/vcgen.hpp"

using namespace pexp;

namespace {

/// Pointwise equality of two expectations over a grid.
bool same_on(const ExpPtr &a, const ExpPtr &b, const StateSpace &space) {
  return entails(a, b, space).valid() && entails(b, a, space).valid();
}

} // namespace

TEST_CASE("loop-free programs produce no side conditions and a single claim") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  CHECK(vc(pf.prog, pf.post).size() == 0);
  VCSet vcs = vcg(pf.pre, pf.prog, pf.post);
  REQUIRE(vcs.size() == 1);
  CHECK(vcs.vcs[0].origins == std::vector<std::string>{"precondition"});
  DischargeReport report = discharge(vcs, pf.space);
  CHECK(report.valid);
}

TEST_CASE("suffix transformer of the probabilistic choice") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  // Representatives of (-inf,0), [0,1), [1,2) and [2,inf).
  StateSpace space;
  space.domains.push_back(
      VarDomain{"x", {Rational(-1), Rational(1, 2), Rational(3, 2), Rational(5, 2)}});
  space.domains.push_back(VarDomain{"y", {Rational(0)}});

  ExpPtr w2 = wpre_suffix(2, pf.prog, pf.post);
  CHECK(same_on(w2, parse_expectation("1/2 * [x >= 1] + 1/2 * [x >= 2]"), space));

  ExpPtr w3 = wpre_suffix(3, pf.prog, pf.post);
  CHECK(same_on(w3, pf.post, space));
  // Dropping the choice is justified: the suffix entailment holds.
  CHECK(entails(w2, w3, space).valid());
}

TEST_CASE("randint suffix transformer collapses to the constant one half") {
  ProgramFile pf = testing::load_fixture("randint.pexp");
  ExpPtr w1 = wpre_suffix(1, pf.prog, pf.post);
  CHECK(same_on(w1, parse_expectation("1/2"), pf.space));
  ExpPtr w4 = wpre_suffix(4, pf.prog, pf.post);
  CHECK(same_on(w4, parse_expectation("1/2"), pf.space));
  CHECK(entails(w1, w4, pf.space).valid());
}

TEST_CASE("suffix and prefix boundary cases") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  size_t n = pf.prog.insts.size();
  CHECK(same_on(wpre_suffix(n + 1, pf.prog, pf.post), pf.post, pf.space));
  CHECK(vcg_suffix(n + 1, pf.pre, pf.prog, pf.post).size() == 0);
  VCSet zero = vcg_prefix(0, pf.pre, pf.prog, pf.post);
  REQUIRE(zero.size() == 1);
  CHECK(equal(zero.vcs[0].lhs, pf.pre));
  CHECK(equal(zero.vcs[0].rhs, pf.post));
  CHECK(same_on(wpre_suffix(1, pf.prog, pf.post), wpre(pf.prog, pf.post), pf.space));
}

TEST_CASE("a too strong precondition is refuted with a witness") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  VCSet vcs = vcg(parse_expectation("1"), pf.prog, pf.post);
  DischargeReport report = discharge(vcs, pf.space);
  CHECK(!report.valid);
  REQUIRE(report.entries.size() == 1);
  REQUIRE(report.entries[0].result.witness.has_value());
  Rational y = report.entries[0].result.witness->state.at("y");
  CHECK(y * y > Rational(1, 2));
}

TEST_CASE("partial invariant obligations of the geometric loop") {
  ProgramFile pf = testing::load_fixture("geometric.pexp");
  VCSet vcs = vcg(pf.pre, pf.prog, pf.post);
  // precondition, invariant preservation, loop exit.
  CHECK(vcs.size() == 3);
  CHECK(discharge(vcs, pf.space).valid);
}

TEST_CASE("coin game obligations discharge under the annotated data") {
  ProgramFile pf = testing::load_fixture("coin_game.pexp");
  REQUIRE(pf.mode == Mode::Total);
  VCSet vcs = vcg_total(pf.pre, pf.prog, pf.post);
  // precondition + termination invariant + variant decrease + variant
  // bounds + partial invariant preservation + loop exit.
  CHECK(vcs.size() == 6);
  bool saw_binding = false;
  for (const auto &vc : vcs.vcs)
    if (!vc.bindings.empty()) {
      saw_binding = true;
      CHECK(vc.bindings[0].values ==
            std::vector<Rational>{Rational(0), Rational(1)});
    }
  CHECK(saw_binding); // the variant-decrease claim quantifies the snapshot
  DischargeReport report = discharge(vcs, pf.space);
  for (const auto &entry : report.entries) {
    CAPTURE(entry.vc.origins.front());
    CHECK(entry.result.valid());
  }
  CHECK(report.valid);
}

TEST_CASE("demanding a certain variant decrease breaks the coin game") {
  ProgramFile pf = testing::load_fixture("coin_game_eps1.pexp");
  DischargeReport report = discharge(vcg_total(pf.pre, pf.prog, pf.post), pf.space);
  CHECK(!report.valid);
  bool variant_failed = false;
  for (const auto &entry : report.entries)
    for (const auto &origin : entry.vc.origins)
      if (origin.find("variant-decrease") != std::string::npos) {
        variant_failed = true;
        CHECK(!entry.result.valid());
        REQUIRE(entry.result.witness.has_value());
        // The counterexample keeps the variant at its old value.
        CHECK(entry.result.witness->state.at("a") !=
              entry.result.witness->state.at("b"));
      }
  CHECK(variant_failed);
}

TEST_CASE("total transformer reduces to the annotated invariant when T is true") {
  ProgramFile pf = testing::load_fixture("coin_game.pexp");
  const Inst &loop = pf.prog.insts[3];
  REQUIRE(loop.kind == Inst::Kind::While);
  Prog just_loop;
  just_loop.insts.push_back(loop);
  CHECK(same_on(wpre_total(just_loop, pf.post), loop.invariant, pf.space));
  // Off loops the partial and total transformers coincide.
  ProgramFile loop_free = testing::load_fixture("randint.pexp");
  CHECK(same_on(wpre(loop_free.prog, loop_free.post),
                wpre_total(loop_free.prog, loop_free.post), loop_free.space));
}

TEST_CASE("structurally equal claims merge keeping every origin") {
  VCSet set;
  ExpPtr a = parse_expectation("1/2");
  ExpPtr b = parse_expectation("[x = 1]");
  set.add(VC{a, b, {}, {"first"}});
  set.add(VC{a, b, {}, {"second"}});
  set.add(VC{b, a, {}, {"third"}});
  REQUIRE(set.size() == 2);
  CHECK(set.vcs[0].origins == std::vector<std::string>({"first", "second"}));
}

TEST_CASE("full fixture corpus discharges according to its specification") {
  struct Expected {
    const char *name;
    bool valid;
  } cases[] = {
      {"prog1.pexp", true},     {"randint.pexp", true}, {"randint_uniform.pexp", true},
      {"coin_game.pexp", true}, {"coin_game_eps1.pexp", false},
      {"geometric.pexp", true}, {"choice_precision.pexp", true},
      {"bn_x.pexp", true},      {"bn_tl.pexp", true},
  };
  for (const auto &c : cases) {
    CAPTURE(c.name);
    ProgramFile pf = testing::load_fixture(c.name);
    CHECK(discharge(vcg_mode(pf.pre, pf.prog, pf.post, pf.mode), pf.space).valid == c.valid);
  }
}
