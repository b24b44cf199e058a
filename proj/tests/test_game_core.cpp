#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamefold/random.hpp"
#include "support/common.hpp"

using namespace gamefold;
using testsupport::load_fixture;

namespace {

// Step-by-step reference simulation, independent of run_mealy.
MealyRun simulate(const GameSpec& game, int player, const History& h) {
  const MealyMachine& m = game.observers[player];
  MealyRun run;
  int q = m.initial;
  run.states.push_back(q);
  for (const Move& mv : h) {
    int g = game.move_index(mv);
    run.outputs.push_back(m.output[q][g]);
    q = m.next[q][g];
    run.states.push_back(q);
  }
  return run;
}

History random_history(Rng& rng, const GameSpec& game, int length) {
  History h;
  for (int i = 0; i < length; ++i) {
    h.push_back({rng.below(game.profile_count()), rng.below(game.direction_count())});
  }
  return h;
}

}  // namespace

TEST_CASE("profile enumeration is lexicographic and invertible") {
  GameSpec game;
  game.players = 2;
  game.actions = {{"a", "b"}, {"x", "y", "z"}};
  game.directions = {"l", "r"};
  CHECK(game.profile_count() == 6);
  int idx = 0;
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int a1 = 0; a1 < 3; ++a1) {
      CHECK(game.profile_index({a0, a1}) == idx);
      CHECK(game.decode_profile(idx) == std::vector<int>{a0, a1});
      CHECK(game.profile_component(idx, 0) == a0);
      CHECK(game.profile_component(idx, 1) == a1);
      idx++;
    }
  }
  CHECK(game.profile_name(1) == "(a,y)");
}

TEST_CASE("run_mealy on a constant-output observer") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  History tau = parse_history(parsed.game, "(a,l)(b,r)");
  MealyRun run = run_mealy(parsed.game, 0, tau);
  CHECK(run.states == std::vector<int>{0, 0, 0});
  CHECK(run.outputs == std::vector<int>{0, 0});
}

TEST_CASE("run_mealy on the empty history") {
  ParsedGame parsed = load_fixture("full_safe.game");
  MealyRun run = run_mealy(parsed.game, 0, {});
  CHECK(run.states == std::vector<int>{parsed.game.observers[0].initial});
  CHECK(run.outputs.empty());
}

TEST_CASE("toggle observer returns to its initial state after rr") {
  ParsedGame parsed = load_fixture("toggle_r.game");
  History tau = parse_history(parsed.game, "(a,r)(a,r)");
  MealyRun expected = simulate(parsed.game, 0, tau);
  MealyRun run = run_mealy(parsed.game, 0, tau);
  CHECK(run.states == expected.states);
  CHECK(run.outputs == expected.outputs);
  CHECK(run.states.back() == parsed.game.observers[0].initial);
}

TEST_CASE("run_mealy rejects malformed moves naming the index") {
  ParsedGame parsed = load_fixture("blind_safe.game");
  History tau = {{0, 0}, {0, 7}};
  try {
    run_mealy(parsed.game, 0, tau);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == Error::Code::Validation);
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
}

TEST_CASE("indistinguishability under the three fixture observers") {
  ParsedGame blind = load_fixture("blind_safe.game");
  CHECK(indistinguishable(blind.game, 0, parse_history(blind.game, "(a,l)"),
                          parse_history(blind.game, "(b,r)")));

  ParsedGame full = load_fixture("full_safe.game");
  CHECK_FALSE(indistinguishable(full.game, 0, parse_history(full.game, "(a,l)"),
                                parse_history(full.game, "(a,r)")));

  ParsedGame dmask = load_fixture("dmask_safe.game");
  History t1 = parse_history(dmask.game, "(a,l)(b,l)");
  History t2 = parse_history(dmask.game, "(a,r)(b,r)");
  MealyRun r1 = simulate(dmask.game, 0, t1);
  MealyRun r2 = simulate(dmask.game, 0, t2);
  CHECK(r1.outputs == r2.outputs);
  CHECK(indistinguishable(dmask.game, 0, t1, t2));
}

TEST_CASE("histories of different lengths are never related") {
  ParsedGame blind = load_fixture("blind_safe.game");
  CHECK_FALSE(indistinguishable(blind.game, 0, parse_history(blind.game, "(a,l)"),
                                parse_history(blind.game, "(a,l)(a,l)")));
}

TEST_CASE("indistinguishability is an equivalence on sampled histories") {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    RandomGameParams params;
    params.players = 1 + rng.below(2);
    GameSpec game = random_game(rng, params);
    int len = rng.below(5);
    History a = random_history(rng, game, len);
    History b = random_history(rng, game, len);
    History c = random_history(rng, game, len);
    for (int i = 0; i < game.players; ++i) {
      CHECK(indistinguishable(game, i, a, a));
      CHECK(indistinguishable(game, i, a, b) == indistinguishable(game, i, b, a));
      if (indistinguishable(game, i, a, b) && indistinguishable(game, i, b, c)) {
        CHECK(indistinguishable(game, i, a, c));
      }
    }
  }
}

TEST_CASE("run_mealy is prefix-compatible") {
  Rng rng(12);
  RandomGameParams params;
  params.players = 2;
  GameSpec game = random_game(rng, params);
  History h = random_history(rng, game, 6);
  for (int i = 0; i < game.players; ++i) {
    MealyRun full_run = run_mealy(game, i, h);
    History prefix(h.begin(), h.end() - 1);
    MealyRun prefix_run = run_mealy(game, i, prefix);
    CHECK(std::equal(prefix_run.states.begin(), prefix_run.states.end(),
                     full_run.states.begin()));
    CHECK(std::equal(prefix_run.outputs.begin(), prefix_run.outputs.end(),
                     full_run.outputs.begin()));
  }
}

TEST_CASE("verdicts are invariant under observer state renaming") {
  Rng rng(13);
  RandomGameParams params;
  GameSpec game = random_game(rng, params);
  GameSpec renamed = game;
  MealyMachine& m = renamed.observers[0];
  // Reverse the state indexing.
  int n = m.state_count();
  std::vector<int> perm(n);
  for (int q = 0; q < n; ++q) perm[q] = n - 1 - q;
  MealyMachine permuted;
  permuted.states.resize(n);
  permuted.observations = m.observations;
  permuted.initial = perm[m.initial];
  permuted.next.assign(n, {});
  permuted.output.assign(n, {});
  for (int q = 0; q < n; ++q) {
    permuted.states[perm[q]] = m.states[q] + "x";
    permuted.output[perm[q]] = m.output[q];
    permuted.next[perm[q]].resize(m.next[q].size());
    for (size_t g = 0; g < m.next[q].size(); ++g) permuted.next[perm[q]][g] = perm[m.next[q][g]];
  }
  renamed.observers[0] = permuted;
  for (int round = 0; round < 30; ++round) {
    int len = rng.below(5);
    History a = random_history(rng, game, len);
    History b = random_history(rng, game, len);
    CHECK(indistinguishable(game, 0, a, b) == indistinguishable(renamed, 0, a, b));
  }
}

TEST_CASE("validate_game reports structural defects") {
  ParsedGame parsed = load_fixture("full_safe.game");
  CHECK(validate_game(parsed.game).empty());

  GameSpec broken = parsed.game;
  broken.observers[0].next[0][1] = -1;
  auto diags = validate_game(broken);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags.front().code == "IncompleteTransition");

  GameSpec mismatch = parsed.game;
  mismatch.players = 2;
  mismatch.actions.push_back({"x"});
  bool found = false;
  for (const auto& d : validate_game(mismatch)) {
    if (d.code == "ObserverCountMismatch") found = true;
  }
  CHECK(found);
}

TEST_CASE("priority renormalization preserves parity and order") {
  ParityTreeAutomaton aut;
  aut.states = {"p", "q", "r", "s"};
  aut.initial = 0;
  aut.priority = {3, 6, 5, 12};
  aut.transitions.assign(4, {});
  renormalize_priorities(aut);
  // 3 -> 1, 5 -> 1, 6 -> 2, 12 -> 2.
  CHECK(aut.priority == std::vector<int>{1, 2, 1, 2});
  CHECK(aut.priority_count == 3);
  std::vector<int> original{3, 6, 5, 12};
  for (size_t i = 0; i < aut.priority.size(); ++i) {
    CHECK(aut.priority[i] % 2 == original[i] % 2);
  }

  ParityTreeAutomaton even;
  even.states = {"a"};
  even.initial = 0;
  even.priority = {8};
  even.transitions.assign(1, {});
  renormalize_priorities(even);
  CHECK(even.priority == std::vector<int>{0});
  CHECK(even.priority_count == 1);
}

TEST_CASE("degenerate direction and player counts are allowed") {
  ParsedGame pulse = load_fixture("pulse.game");
  CHECK(pulse.game.direction_count() == 1);
  CHECK(validate_game(pulse.game).empty());
  CHECK(validate_automaton(*pulse.spec, pulse.game).empty());
}
