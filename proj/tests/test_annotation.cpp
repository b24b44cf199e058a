#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamefold/random.hpp"
#include "support/accept_oracle.hpp"
#include "support/common.hpp"

using namespace gamefold;
using testsupport::constant_strategy;
using testsupport::load_fixture;
using testsupport::oracle_accepts;

namespace {

AnnotatedStrategy constant_safe_annotation(const ParsedGame& parsed, int wstate) {
  DecisionStructure s = constant_strategy(parsed.game, 0);
  return attach_labels(s, {{parsed.game.observers[0].initial}}, {wstate});
}

void collect_followed(const DecisionStructure& s, const GameSpec& game, int depth, History& cur,
                      int node, std::vector<std::pair<History, int>>& out) {
  out.push_back({cur, node});
  if (static_cast<int>(cur.size()) == depth) return;
  for (int d = 0; d < game.direction_count(); ++d) {
    cur.push_back({s.choice[node], d});
    collect_followed(s, game, depth, cur, s.edge[node][d], out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("check_annotation accepts the constant safe annotation") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  AnnotatedStrategy annotated = constant_safe_annotation(parsed, 0);
  CHECK_FALSE(check_annotation(annotated, parsed.game, *parsed.spec));
}

TEST_CASE("check_annotation flags an initial-label mismatch") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  AnnotatedStrategy annotated = constant_safe_annotation(parsed, 1);  // bad
  auto violation = check_annotation(annotated, parsed.game, *parsed.spec);
  REQUIRE(violation.has_value());
  CHECK(violation->kind == AnnotationViolation::Kind::InitialLabel);
}

TEST_CASE("check_annotation flags broken run steps") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  DecisionStructure s = constant_strategy(parsed.game, 1);  // plays b
  AnnotatedStrategy annotated = attach_labels(s, {{0}}, {0});
  auto violation = check_annotation(annotated, parsed.game, *parsed.spec);
  REQUIRE(violation.has_value());
  // (s, b, (s, s)) is no transition: b leads to bad.
  CHECK(violation->kind == AnnotationViolation::Kind::RunStep);
}

TEST_CASE("a node reachable in two observer states breaks Mealy consistency") {
  ParsedGame parsed = load_fixture("toggle_r.game");
  // One node with self-loops: after (a,l) the observer stays in p0, after
  // (a,r) it moves to p1, so no single label can describe both runs.
  DecisionStructure s = constant_strategy(parsed.game, 0);
  AnnotatedStrategy annotated = attach_labels(s, {{0}}, {0});
  auto violation = check_annotation(annotated, parsed.game, *parsed.spec);
  REQUIRE(violation.has_value());
  CHECK(violation->kind == AnnotationViolation::Kind::MealyStep);
  // Witness histories: the two runs reach the node in different states.
  History t1 = parse_history(parsed.game, "(a,l)");
  History t2 = parse_history(parsed.game, "(a,r)");
  MealyRun r1 = run_mealy(parsed.game, 0, t1);
  MealyRun r2 = run_mealy(parsed.game, 0, t2);
  CHECK(r1.states.back() != r2.states.back());
}

TEST_CASE("check_annotation rejects labels naming undeclared states") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  DecisionStructure s = constant_strategy(parsed.game, 0);
  AnnotatedStrategy annotated = attach_labels(s, {{0}}, {7});
  auto violation = check_annotation(annotated, parsed.game, *parsed.spec);
  REQUIRE(violation.has_value());
  CHECK(violation->kind == AnnotationViolation::Kind::UndeclaredState);
}

TEST_CASE("is_witness on safe loops and on the absorbing failure") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  AnnotatedStrategy good = constant_safe_annotation(parsed, 0);
  CHECK(is_witness(good, *parsed.spec).accepting);

  // Structure that falls into bad and loops there.
  DecisionStructure s;
  s.nodes = {"v0", "vbad"};
  s.initial = 0;
  s.choice = {1, 0};
  s.frontier = {0, 0};
  s.edge = {{1, 1}, {1, 1}};
  AnnotatedStrategy doomed = attach_labels(s, {{0}, {0}}, {0, 1});
  WitnessResult result = is_witness(doomed, *parsed.spec);
  CHECK_FALSE(result.accepting);
  REQUIRE(result.counterexample.has_value());
  // The lasso's cycle sits on the bad self-loop.
  for (int v : result.counterexample->cycle) CHECK(v == 1);
  CHECK(result.counterexample->stem.front() == 0);
}

TEST_CASE("an alternating 1,0 cycle is accepting") {
  ParsedGame parsed = load_fixture("pulse.game");
  DecisionStructure s;
  s.nodes = {"v0", "v1"};
  s.initial = 0;
  s.choice = {0, 0};
  s.frontier = {0, 0};
  s.edge = {{1}, {0}};
  AnnotatedStrategy annotated = attach_labels(s, {{0}, {0}}, {0, 1});  // t1, t0
  // The only cycle visits priorities 1 and 0; the minimum is even.
  CHECK(is_witness(annotated, *parsed.spec).accepting);
}

TEST_CASE("find_witness_annotation on the safe fixtures") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  auto witness = find_witness_annotation(constant_strategy(parsed.game, 0), parsed.game,
                                         *parsed.spec);
  REQUIRE(witness.has_value());
  CHECK(witness->node_count() == 1);
  CHECK(witness->labels.wstate[0] == 0);
  CHECK_FALSE(check_annotation(*witness, parsed.game, *parsed.spec));
  CHECK(is_witness(*witness, *parsed.spec).accepting);

  CHECK_FALSE(find_witness_annotation(constant_strategy(parsed.game, 1), parsed.game,
                                      *parsed.spec));
}

TEST_CASE("find_witness_annotation is refuted when Nature avoids r") {
  ParsedGame parsed = load_fixture("blind_evenr.game");
  // Nature can keep playing l, so no annotation of any structure accepts.
  DecisionStructure s;
  s.nodes = {"v0", "v1"};
  s.initial = 0;
  s.choice = {0, 0};
  s.frontier = {0, 0};
  s.edge = {{1, 1}, {0, 0}};
  CHECK_FALSE(find_witness_annotation(s, parsed.game, *parsed.spec));
  auto oracle = oracle_accepts(s, parsed.game, *parsed.spec);
  REQUIRE(oracle.has_value());
  CHECK_FALSE(*oracle);
}

TEST_CASE("witness search agrees with tuple-choice enumeration") {
  Rng rng(31);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    RandomGameParams gp;
    gp.players = 1 + rng.below(2);
    GameSpec game = random_game(rng, gp);
    RandomSpecParams sp;
    sp.max_states = 4;
    sp.max_priority = 2;
    sp.allow_empty = true;
    ParityTreeAutomaton spec = random_spec(rng, game, sp);
    auto s = random_uniform_structure(rng, game, 8);
    if (!s) continue;
    auto expected = oracle_accepts(*s, game, spec, 200'000);
    if (!expected) continue;  // combinatorics over budget
    auto witness = find_witness_annotation(*s, game, spec);
    CHECK(witness.has_value() == *expected);
    if (witness) {
      CHECK_FALSE(check_annotation(*witness, game, spec));
      CHECK(is_witness(*witness, spec).accepting);
    }
    checked++;
  }
  CHECK(checked > 60);
}

TEST_CASE("the refined product preserves the followed histories") {
  Rng rng(32);
  int checked = 0;
  for (int round = 0; round < 60 && checked < 15; ++round) {
    RandomGameParams gp;
    GameSpec game = random_game(rng, gp);
    RandomSpecParams sp;
    ParityTreeAutomaton spec = random_spec(rng, game, sp);
    auto s = random_uniform_structure(rng, game, 5);
    if (!s) continue;
    auto witness = find_witness_annotation(*s, game, spec);
    if (!witness) continue;
    checked++;
    std::vector<std::pair<History, int>> base, refined;
    History cur;
    collect_followed(*s, game, 3, cur, s->initial, base);
    collect_followed(witness->structure, game, 3, cur, witness->structure.initial, refined);
    REQUIRE(base.size() == refined.size());
    for (size_t i = 0; i < base.size(); ++i) {
      CHECK(base[i].first == refined[i].first);
      CHECK(s->choice[base[i].second] == witness->structure.choice[refined[i].second]);
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("annotate_tree pushes labels onto the unravelling") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  DecisionStructure s = constant_strategy(parsed.game, 0);

  AnnotatedStrategy depth0 = annotate_tree(s, parsed.game, *parsed.spec, 0);
  CHECK(depth0.node_count() == 1);
  CHECK(depth0.labels.wstate[0] == parsed.spec->initial);
  CHECK(depth0.labels.mealy[0][0] == parsed.game.observers[0].initial);

  AnnotatedStrategy depth2 = annotate_tree(s, parsed.game, *parsed.spec, 2);
  CHECK(depth2.node_count() == 7);
  for (int v = 0; v < 7; ++v) CHECK(depth2.labels.wstate[v] == 0);
  CHECK_FALSE(check_annotation(depth2, parsed.game, *parsed.spec));
}

TEST_CASE("annotate_tree labels match the observer runs per history") {
  ParsedGame parsed = load_fixture("toggle_r.game");
  DecisionStructure s = constant_strategy(parsed.game, 0);
  AnnotatedStrategy tree = annotate_tree(s, parsed.game, *parsed.spec, 2);
  std::vector<std::pair<History, int>> reached;
  History cur;
  collect_followed(tree.structure, parsed.game, 2, cur, tree.structure.initial, reached);
  for (const auto& [history, node] : reached) {
    MealyRun run = run_mealy(parsed.game, 0, history);
    CHECK(tree.labels.mealy[node][0] == run.states.back());
  }
}

TEST_CASE("annotate_tree reports when no witness exists") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  DecisionStructure s = constant_strategy(parsed.game, 1);
  CHECK_THROWS_AS(annotate_tree(s, parsed.game, *parsed.spec, 2), Error);
}

TEST_CASE("annotation verdicts are invariant under node relabelling") {
  ParsedGame parsed = load_fixture("pulse.game");
  DecisionStructure s;
  s.nodes = {"v0", "v1"};
  s.initial = 0;
  s.choice = {0, 0};
  s.frontier = {0, 0};
  s.edge = {{1}, {0}};
  AnnotatedStrategy annotated = attach_labels(s, {{0}, {0}}, {0, 1});

  DecisionStructure t;
  t.nodes = {"w1", "w0"};
  t.initial = 1;
  t.choice = {0, 0};
  t.frontier = {0, 0};
  t.edge = {{1}, {0}};
  AnnotatedStrategy relabelled = attach_labels(t, {{0}, {0}}, {1, 0});

  CHECK(check_annotation(annotated, parsed.game, *parsed.spec).has_value() ==
        check_annotation(relabelled, parsed.game, *parsed.spec).has_value());
  CHECK(is_witness(annotated, *parsed.spec).accepting ==
        is_witness(relabelled, *parsed.spec).accepting);
}
