#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "pexp/parser.hpp"
#include "pexp/portion.hpp"
#include "pexp/printer.hpp"
#include "pexp/slicing.hpp"

using namespace pexp;

namespace {

bool same_on(const ExpPtr &a, const ExpPtr &b, const StateSpace &space,
             const std::vector<LogicalBinding> &bindings = {}) {
  return entails(a, b, space, bindings).valid() && entails(b, a, space, bindings).valid();
}

std::vector<LocalSpec> specs_at(const std::vector<LocalSpec> &specs, const std::string &path) {
  std::vector<LocalSpec> out;
  for (const auto &s : specs)
    if (to_string(s.path) == path)
      out.push_back(s);
  return out;
}

} // namespace

TEST_CASE("remove keeps the rest of the sequence") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  CHECK(equal(remove(2, 2, pf.prog), parse_program("x := 3/2 - y*y")));
  CHECK(equal(remove(1, 1, pf.prog),
              parse_program("{ x := x - 1 } [1/2] { x := x - 2 }")));
  // Removing everything leaves the skip program, not an empty one.
  CHECK(equal(remove(1, 2, pf.prog), parse_program("skip")));

  ProgramFile ri = testing::load_fixture("randint.pexp");
  CHECK(equal(remove(1, 3, ri.prog),
              parse_program("{ b3 := 0 } [1/2] { b3 := 1 };"
                            "r := b0 + 2*b1 + 4*b2 + 8*b3")));
}

TEST_CASE("top-level candidates are exactly the justified spans") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  auto cands = top_level_candidates(pf.prog, pf.post, pf.mode, pf.space);
  CHECK(cands == std::vector<std::pair<size_t, size_t>>{{2, 2}});

  ProgramFile ri = testing::load_fixture("randint.pexp");
  auto ri_cands = top_level_candidates(ri.prog, ri.post, ri.mode, ri.space);
  CHECK(std::find(ri_cands.begin(), ri_cands.end(), std::make_pair(size_t(1), size_t(3))) !=
        ri_cands.end());
  CHECK(std::find(ri_cands.begin(), ri_cands.end(), std::make_pair(size_t(1), size_t(4))) ==
        ri_cands.end());

  ProgramFile cp = testing::load_fixture("choice_precision.pexp");
  CHECK(top_level_candidates(cp.prog, cp.post, cp.mode, cp.space).empty());
}

TEST_CASE("paths address nested subprograms") {
  ProgramFile ri = testing::load_fixture("randint.pexp");
  SubprogramPath left4;
  left4.steps.push_back(PathStep{PathStep::Kind::Index, 4});
  left4.steps.push_back(PathStep{PathStep::Kind::Left, 0});
  CHECK(to_string(left4) == "[4].left");
  CHECK(equal(subprogram_at(ri.prog, left4), parse_program("b3 := 0")));
  Prog replaced = replace_subprogram(ri.prog, left4, parse_program("skip"));
  CHECK(equal(*replaced.insts[3].branch1, parse_program("skip")));
  CHECK(equal(*replaced.insts[3].branch2, *ri.prog.insts[3].branch2));
}

TEST_CASE("local specification induced on the last bit of randint") {
  ProgramFile ri = testing::load_fixture("randint.pexp");
  auto specs = local_specifications(ri.prog, ri.pre, ri.post, ri.mode);

  auto root = specs_at(specs, "<root>");
  REQUIRE(root.size() == 1);
  CHECK(equal(root[0].pre, ri.pre));
  CHECK(equal(root[0].post, ri.post));

  auto left = specs_at(specs, "[4].left");
  REQUIRE(left.size() == 1);
  CHECK(same_on(left[0].pre, parse_expectation("[b0 + 2*b1 + 4*b2 >= 8]"), ri.space));
  CHECK(same_on(left[0].post, parse_expectation("[b0 + 2*b1 + 4*b2 + 8*b3 >= 8]"), ri.space));
  // The induced entailment justifying the branch removal.
  CHECK(entails(left[0].pre, left[0].post, ri.space).valid());

  auto right = specs_at(specs, "[4].right");
  REQUIRE(right.size() == 1);
  CHECK(!entails(right[0].pre, right[0].post, ri.space).valid());
}

TEST_CASE("conditional branches receive guarded local specifications") {
  ProgramFile bn = testing::load_fixture("bn_x.pexp");
  auto specs = local_specifications(bn.prog, bn.pre, bn.post, bn.mode);
  auto then3 = specs_at(specs, "[3].then");
  REQUIRE(then3.size() == 1);
  // The guarded precondition vanishes wherever the guard is false.
  for (const State &s : bn.space.enumerate())
    if (s.at("a") != 1)
      CHECK(evaluate(then3[0].pre, s) == 0);
}

TEST_CASE("a total loop body carries three local specifications") {
  ProgramFile cg = testing::load_fixture("coin_game.pexp");
  auto specs = local_specifications(cg.prog, cg.pre, cg.post, cg.mode);
  auto body = specs_at(specs, "[4].body");
  REQUIRE(body.size() == 3);

  size_t partial = 0, total = 0, with_binding = 0;
  const Prog &loop_body = *cg.prog.insts[3].branch1;
  for (const auto &spec : body) {
    partial += spec.kind == Mode::Partial;
    total += spec.kind == Mode::Total;
    with_binding += !spec.bindings.empty();
    // Each of the three claims (invariant, termination and variant)
    // justifies removing the flip of a's outcome.
    ExpPtr w3 = wpre_suffix(3, loop_body, spec.post,
                            spec.kind == Mode::Total ? Mode::Total : Mode::Partial);
    ExpPtr w4 = wpre_suffix(4, loop_body, spec.post,
                            spec.kind == Mode::Total ? Mode::Total : Mode::Partial);
    CHECK(entails(w3, w4, cg.space, spec.bindings).valid());
  }
  CHECK(partial == 1);
  CHECK(total == 2);
  CHECK(with_binding == 1);
}

TEST_CASE("greedy slicing of the running examples") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  SliceResult s1 = slice_fixpoint(pf.prog, pf.pre, pf.post, pf.mode, pf.space);
  CHECK(equal(s1.prog, parse_program("x := 3/2 - y*y")));
  REQUIRE(s1.removals.size() == 1);
  CHECK(to_string(s1.removals[0]) == "removed <root>[2..2]");

  ProgramFile ri = testing::load_fixture("randint.pexp");
  SliceResult s2 = slice_fixpoint(ri.prog, ri.pre, ri.post, ri.mode, ri.space);
  CHECK(equal(s2.prog, parse_program("{ skip } [1/2] { b3 := 1 };"
                                     "r := b0 + 2*b1 + 4*b2 + 8*b3")));
}

TEST_CASE("greedy slicing drops the outcome flip from the coin game") {
  ProgramFile cg = testing::load_fixture("coin_game.pexp");
  SliceResult s = slice_fixpoint(cg.prog, cg.pre, cg.post, cg.mode, cg.space);
  std::string text = pretty_print(s.prog);
  CHECK(text.find("1 - a") == std::string::npos);
  // The loop itself and the round counter must survive.
  CHECK(text.find("while") != std::string::npos);
  CHECK(text.find("n := n + 1") != std::string::npos);
  CHECK(is_portion_of(s.prog, cg.prog));
  CHECK(verify_slice(s.prog, cg.pre, cg.post, cg.prog, cg.mode, cg.space));
}

TEST_CASE("loop bodies are never sliced to bare skip unless requested") {
  // The invariant 1 makes the body specification trivially skippable, but
  // the post [c = 0] forces the loop itself to stay.
  StateSpace space;
  space.domains.push_back(VarDomain{"c", {Rational(0), Rational(1)}});
  Prog p = parse_program(
      "c := 1; while (c = 1) @invariant{ 1 } do { { c := 1 } [1/2] { c := 0 } }");
  ExpPtr pre = parse_expectation("1");
  ExpPtr post = parse_expectation("[c = 0]");

  SliceResult kept = slice_fixpoint(p, pre, post, Mode::Partial, space);
  REQUIRE(kept.prog.insts.back().kind == Inst::Kind::While);
  const Prog &body = *kept.prog.insts.back().branch1;
  CHECK(!(body.insts.size() == 1 && body.insts[0].kind == Inst::Kind::Skip));

  SliceOptions relaxed;
  relaxed.allow_trivial_loop_slices = true;
  SliceResult loose = slice_fixpoint(p, pre, post, Mode::Partial, space, relaxed);
  REQUIRE(loose.prog.insts.back().kind == Inst::Kind::While);
  const Prog &loose_body = *loose.prog.insts.back().branch1;
  CHECK(loose_body.insts.size() == 1);
  CHECK(loose_body.insts[0].kind == Inst::Kind::Skip);
  CHECK(verify_slice(loose.prog, pre, post, p, Mode::Partial, space));
}

TEST_CASE("the imprecise probabilistic choice is kept whole") {
  ProgramFile cp = testing::load_fixture("choice_precision.pexp");
  SliceResult s = slice_fixpoint(cp.prog, cp.pre, cp.post, cp.mode, cp.space);
  CHECK(equal(s.prog, cp.prog));
  CHECK(s.removals.empty());
}

TEST_CASE("verify_slice accepts sound slices and rejects unsound ones") {
  ProgramFile pf = testing::load_fixture("prog1.pexp");
  CHECK(verify_slice(parse_program("x := 3/2 - y*y"), pf.pre, pf.post, pf.prog, pf.mode,
                     pf.space));
  // Not a portion at all.
  CHECK(!verify_slice(parse_program("y := 0"), pf.pre, pf.post, pf.prog, pf.mode, pf.space));
  // A portion that breaks the specification.
  CHECK(!verify_slice(parse_program("{ x := x - 1 } [1/2] { x := x - 2 }"), pf.pre, pf.post,
                      pf.prog, pf.mode, pf.space));
}

TEST_CASE("greedy slices of the whole corpus verify") {
  const char *names[] = {"prog1.pexp",   "randint.pexp", "randint_uniform.pexp",
                         "coin_game.pexp", "geometric.pexp", "choice_precision.pexp",
                         "bn_x.pexp",    "bn_tl.pexp"};
  for (const char *name : names) {
    CAPTURE(name);
    ProgramFile pf = testing::load_fixture(name);
    SliceResult s = slice_fixpoint(pf.prog, pf.pre, pf.post, pf.mode, pf.space);
    CHECK(is_portion_of(s.prog, pf.prog));
    CHECK(verify_slice(s.prog, pf.pre, pf.post, pf.prog, pf.mode, pf.space));
  }
}
