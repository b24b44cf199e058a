// Deterministic generators for randomized test corpora: games, parity
// specifications, annotated strategies and retraction maps. All draws come
// from an explicit splitmix state so corpora are reproducible across
// platforms from a single seed.
#pragma once

#include <cstdint>
#include <optional>

#include "gamefold/progress.hpp"
#include "gamefold/retraction.hpp"

namespace gamefold {

struct Rng {
  uint64_t state = 0x9e3779b97f4a7c15ull;

  explicit Rng(uint64_t seed = 1) : state(seed + 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
  bool chance(int num, int den) { return below(den) < num; }
};

struct RandomGameParams {
  int players = 1;
  int max_actions = 2;
  int max_directions = 2;
  int max_observer_states = 2;
  int max_observations = 3;
};

GameSpec random_game(Rng& rng, const RandomGameParams& params);

struct RandomSpecParams {
  int max_states = 3;
  int max_priority = 2;      // priorities drawn from 0..max_priority
  int max_tuples = 2;        // nondeterministic width per (state, profile)
  bool allow_empty = false;  // when set, some (state, profile) rows may be dead
};

ParityTreeAutomaton random_spec(Rng& rng, const GameSpec& game, const RandomSpecParams& params);

/// Observable instance: a single-state-per-observation-letter construction
/// where the specification reads (action, observation) deterministically, so
/// the observable-mode requirements hold by construction.
struct ObservableInstance {
  GameSpec game;
  ParityTreeAutomaton spec;
};
ObservableInstance random_observable_instance(Rng& rng);

/// Random annotated structure over a synthetic one-player game whose
/// specification is built to make the annotation locally consistent; node
/// priorities are drawn freely. Suitable for measure/witness equivalence
/// testing.
struct RandomAnnotatedParams {
  int max_nodes = 12;
  int priorities = 4;
  int directions = 2;
};
struct RandomAnnotated {
  GameSpec game;
  ParityTreeAutomaton spec;
  AnnotatedStrategy annotated;
};
RandomAnnotated random_annotated(Rng& rng, const RandomAnnotatedParams& params);

/// Uniformly labelled random decision structure for a given game, pruned and
/// uniformity-checked (resampled until uniform or attempts run out).
std::optional<DecisionStructure> random_uniform_structure(Rng& rng, const GameSpec& game,
                                                          int max_nodes, int attempts = 64);

struct RandomRetraction {
  RetractionMap map;
};

/// Rejection-samples a valid retraction for the annotated strategy: groups
/// label-compatible nodes, folds random subsets onto representatives and
/// keeps the result when it passes check_retraction (plus check_monotone
/// when a measure is supplied). fix_initial keeps the initial node fixed.
std::optional<RetractionMap> random_retraction(Rng& rng, const AnnotatedStrategy& annotated,
                                               const GameSpec& game,
                                               const ParityTreeAutomaton& spec,
                                               const ProgressMeasure* measure, bool fix_initial,
                                               int attempts = 64);

}  // namespace gamefold
