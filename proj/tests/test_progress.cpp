#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamefold/random.hpp"
#include "support/common.hpp"

using namespace gamefold;
using testsupport::constant_strategy;
using testsupport::load_fixture;

namespace {

// Minimal synthetic setting: one action, one direction, and one
// specification state per node so annotations hold by construction.
struct Synthetic {
  GameSpec game;
  ParityTreeAutomaton spec;
  AnnotatedStrategy annotated;
};

Synthetic chain_with_priorities(const std::vector<int>& priorities,
                                const std::vector<std::vector<int>>& edges) {
  Synthetic out;
  int n = static_cast<int>(priorities.size());
  out.game.players = 1;
  out.game.actions = {{"a"}};
  out.game.directions = {};
  int dirs = static_cast<int>(edges[0].size());
  for (int d = 0; d < dirs; ++d) out.game.directions.push_back("d" + std::to_string(d));
  MealyMachine m;
  m.states = {"q"};
  m.observations = {"o"};
  m.next.assign(1, std::vector<int>(out.game.move_count(), 0));
  m.output.assign(1, std::vector<int>(out.game.move_count(), 0));
  out.game.observers.push_back(m);

  out.spec.states.resize(n);
  out.spec.initial = 0;
  out.spec.priority = priorities;
  out.spec.transitions.assign(n, {});
  for (int q = 0; q < n; ++q) {
    out.spec.states[q] = "s" + std::to_string(q);
    out.spec.transitions[q].resize(1);
    out.spec.transitions[q][0].push_back(edges[q]);
  }
  renormalize_priorities(out.spec);

  DecisionStructure s;
  s.initial = 0;
  for (int v = 0; v < n; ++v) {
    s.nodes.push_back("v" + std::to_string(v));
    s.choice.push_back(0);
    s.frontier.push_back(0);
    s.edge.push_back(edges[v]);
  }
  out.annotated.structure = s;
  out.annotated.labels.mealy.assign(n, {0});
  for (int v = 0; v < n; ++v) out.annotated.labels.wstate.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("compare_lex on prefixes") {
  CHECK(compare_lex({1, 5}, {1, 3}, 0) == LexOrder::Equal);
  CHECK(compare_lex({1, 5}, {1, 3}, 1) == LexOrder::Greater);
  CHECK(compare_lex({0, 9, 0}, {1, 0, 0}, 2) == LexOrder::Less);
  CHECK_THROWS_AS(compare_lex({1}, {1, 2}, 0), Error);
  CHECK_THROWS_AS(compare_lex({1, 2}, {1, 2}, 2), Error);
}

TEST_CASE("check_measure on single loops") {
  Synthetic even = chain_with_priorities({0}, {{0}});
  ProgressMeasure mu;
  mu.priorities = 1;
  mu.mu = {{0}};
  CHECK_FALSE(check_measure(even.annotated, even.spec, mu));

  Synthetic odd = chain_with_priorities({1}, {{0}});
  ProgressMeasure constant;
  constant.priorities = 2;
  constant.mu = {{0, 3}};
  auto violation = check_measure(odd.annotated, odd.spec, constant);
  REQUIRE(violation.has_value());
  CHECK(violation->node == 0);
  CHECK(violation->dir == 0);
}

TEST_CASE("check_measure accepts the two-node chain certificate") {
  // u -> v with priority 1 at u, a priority-0 loop at v.
  Synthetic chain = chain_with_priorities({1, 0}, {{1}, {1}});
  ProgressMeasure mu;
  mu.priorities = 2;
  mu.mu = {{0, 1}, {0, 0}};
  CHECK_FALSE(check_measure(chain.annotated, chain.spec, mu));
  // Checker accepts non-zero even components as well.
  ProgressMeasure loose = mu;
  loose.mu[0][0] = 2;
  loose.mu[1][0] = 1;
  CHECK_FALSE(check_measure(chain.annotated, chain.spec, loose));
}

TEST_CASE("compute_measure on the constant safe strategy") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  AnnotatedStrategy annotated =
      attach_labels(constant_strategy(parsed.game, 0), {{0}}, {0});
  auto mu = compute_measure(annotated, *parsed.spec);
  REQUIRE(mu.has_value());
  CHECK(mu->mu[0] == std::vector<unsigned>{0, 0});
}

TEST_CASE("compute_measure refuses structures stuck in an odd loop") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  DecisionStructure s;
  s.nodes = {"v0", "vbad"};
  s.initial = 0;
  s.choice = {1, 0};
  s.frontier = {0, 0};
  s.edge = {{1, 1}, {1, 1}};
  AnnotatedStrategy annotated = attach_labels(s, {{0}, {0}}, {0, 1});
  CHECK_FALSE(compute_measure(annotated, *parsed.spec));
}

TEST_CASE("compute_measure on the alternating two-node witness") {
  // Worked by hand: the priority-1 node can see one odd node before a
  // smaller priority, the priority-0 node none.
  Synthetic pulse = chain_with_priorities({1, 0}, {{1}, {0}});
  auto mu = compute_measure(pulse.annotated, pulse.spec);
  REQUIRE(mu.has_value());
  CHECK(mu->mu[0] == std::vector<unsigned>{0, 1});
  CHECK(mu->mu[1] == std::vector<unsigned>{0, 0});
  CHECK_FALSE(check_measure(pulse.annotated, pulse.spec, *mu));
}

TEST_CASE("computed measures are sound, complete and bounded") {
  Rng rng(41);
  int witnesses = 0, refutations = 0;
  for (int round = 0; round < 400; ++round) {
    RandomAnnotatedParams params;
    params.max_nodes = 14;
    params.priorities = 4;
    RandomAnnotated instance = random_annotated(rng, params);
    REQUIRE_FALSE(check_annotation(instance.annotated, instance.game, instance.spec));
    bool accepted = is_witness(instance.annotated, instance.spec).accepting;
    auto mu = compute_measure(instance.annotated, instance.spec);
    CHECK(mu.has_value() == accepted);
    if (mu) {
      witnesses++;
      CHECK_FALSE(check_measure(instance.annotated, instance.spec, *mu));
      unsigned bound = static_cast<unsigned>(instance.annotated.node_count());
      for (const auto& tuple : mu->mu) {
        for (size_t k = 0; k < tuple.size(); ++k) {
          CHECK(tuple[k] <= bound);
          if (k % 2 == 0) CHECK(tuple[k] == 0);
        }
      }
    } else {
      refutations++;
    }
  }
  CHECK(witnesses > 50);
  CHECK(refutations > 50);
}

TEST_CASE("check_measure reports the first violation in node order") {
  Synthetic chain = chain_with_priorities({1, 1, 0}, {{1}, {2}, {2}});
  ProgressMeasure mu;
  mu.priorities = 2;
  mu.mu = {{0, 0}, {0, 0}, {0, 0}};  // violates at both odd nodes
  auto violation = check_measure(chain.annotated, chain.spec, mu);
  REQUIRE(violation.has_value());
  CHECK(violation->node == 0);
}

TEST_CASE("frontier edges are exempt from the measure conditions") {
  Synthetic chain = chain_with_priorities({1, 1, 0}, {{1}, {2}, {2}});
  chain.annotated.structure.frontier = {0, 1, 0};
  chain.annotated.structure.edge[1] = {1};  // frontier self-loop
  auto mu = compute_measure(chain.annotated, chain.spec);
  REQUIRE(mu.has_value());
  CHECK_FALSE(check_measure(chain.annotated, chain.spec, *mu));
  // The frontier node's own odd priority costs nothing downstream of it.
  CHECK(mu->mu[0][1] >= 1);
}

TEST_CASE("measures transfer to certificates and back") {
  ParsedGame parsed = load_fixture("pulse.game");
  DecisionStructure s;
  s.nodes = {"v0", "v1"};
  s.initial = 0;
  s.choice = {0, 0};
  s.frontier = {0, 0};
  s.edge = {{1}, {0}};
  AnnotatedStrategy annotated = attach_labels(s, {{0}, {0}}, {0, 1});
  auto mu = compute_measure(annotated, *parsed.spec);
  REQUIRE(mu.has_value());
  // The t1-labelled node carries the positive odd component.
  CHECK(mu->mu[0][1] == 1);
  CHECK(mu->mu[1][1] == 0);
}
