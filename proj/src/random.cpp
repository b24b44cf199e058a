#include "gamefold/random.hpp"

#include <algorithm>
#include <map>

namespace gamefold {

namespace {

std::vector<std::string> name_list(const std::string& prefix, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

GameSpec random_game(Rng& rng, const RandomGameParams& params) {
  GameSpec game;
  game.players = params.players;
  for (int i = 0; i < params.players; ++i) {
    game.actions.push_back(name_list("a", 1 + rng.below(params.max_actions)));
  }
  game.directions = name_list("d", 1 + rng.below(params.max_directions));
  int moves = game.move_count();
  for (int i = 0; i < params.players; ++i) {
    MealyMachine m;
    int states = 1 + rng.below(params.max_observer_states);
    int letters = 1 + rng.below(params.max_observations);
    m.states = name_list("q", states);
    m.observations = name_list("b", letters);
    m.initial = 0;
    m.next.assign(states, std::vector<int>(moves, 0));
    m.output.assign(states, std::vector<int>(moves, 0));
    for (int q = 0; q < states; ++q) {
      for (int g = 0; g < moves; ++g) {
        m.next[q][g] = rng.below(states);
        m.output[q][g] = rng.below(letters);
      }
    }
    game.observers.push_back(std::move(m));
  }
  return game;
}

ParityTreeAutomaton random_spec(Rng& rng, const GameSpec& game, const RandomSpecParams& params) {
  ParityTreeAutomaton spec;
  int states = 1 + rng.below(params.max_states);
  spec.states = name_list("s", states);
  spec.initial = 0;
  for (int q = 0; q < states; ++q) spec.priority.push_back(rng.below(params.max_priority + 1));
  spec.transitions.assign(states, {});
  int dirs = game.direction_count();
  for (int q = 0; q < states; ++q) {
    spec.transitions[q].resize(game.profile_count());
    for (int a = 0; a < game.profile_count(); ++a) {
      int width = params.allow_empty ? rng.below(params.max_tuples + 1)
                                     : 1 + rng.below(params.max_tuples);
      for (int t = 0; t < width; ++t) {
        std::vector<int> tuple(dirs);
        for (int d = 0; d < dirs; ++d) tuple[d] = rng.below(states);
        spec.transitions[q][a].push_back(std::move(tuple));
      }
    }
  }
  renormalize_priorities(spec);
  return spec;
}

ObservableInstance random_observable_instance(Rng& rng) {
  ObservableInstance out;
  RandomGameParams gp;
  gp.players = 1;
  gp.max_actions = 2;
  gp.max_directions = 2;
  gp.max_observer_states = 1;  // letter-deterministic observation
  gp.max_observations = 2;
  out.game = random_game(rng, gp);

  // The specification advances as a function of (state, action,
  // observation); with a single-state observer the observation depends only
  // on the move, so distinct successors always sit in distinct buckets.
  int states = 1 + rng.below(3);
  out.spec.states = name_list("s", states);
  out.spec.initial = 0;
  for (int q = 0; q < states; ++q) out.spec.priority.push_back(rng.below(3));
  out.spec.transitions.assign(states, {});
  const MealyMachine& observer = out.game.observers[0];
  int dirs = out.game.direction_count();
  for (int q = 0; q < states; ++q) {
    out.spec.transitions[q].resize(out.game.profile_count());
    for (int a = 0; a < out.game.profile_count(); ++a) {
      std::map<int, int> successor_of_obs;
      std::vector<int> tuple(dirs);
      for (int d = 0; d < dirs; ++d) {
        int obs = observer.output[0][out.game.move_index(a, d)];
        auto [it, inserted] = successor_of_obs.emplace(obs, rng.below(states));
        tuple[d] = it->second;
      }
      out.spec.transitions[q][a].push_back(std::move(tuple));
    }
  }
  renormalize_priorities(out.spec);
  out.spec.observable = true;
  return out;
}

RandomAnnotated random_annotated(Rng& rng, const RandomAnnotatedParams& params) {
  RandomAnnotated out;
  int n = 1 + rng.below(params.max_nodes);
  int dirs = 1 + rng.below(params.directions);

  // Trivial one-player game: one action, constant-output observer.
  GameSpec& game = out.game;
  game.players = 1;
  game.actions = {{"a"}};
  game.directions = name_list("d", dirs);
  MealyMachine observer;
  observer.states = {"q"};
  observer.observations = {"o"};
  observer.initial = 0;
  observer.next.assign(1, std::vector<int>(game.move_count(), 0));
  observer.output.assign(1, std::vector<int>(game.move_count(), 0));
  game.observers.push_back(observer);

  DecisionStructure s;
  s.nodes = name_list("v", n);
  s.initial = 0;
  s.choice.assign(n, 0);
  s.frontier.assign(n, 0);
  s.edge.assign(n, std::vector<int>(dirs, 0));
  // Keep every node reachable: node v > 0 gets one incoming edge from a
  // smaller node, remaining edges are free.
  std::vector<std::vector<int>> incoming(n);
  for (int v = 1; v < n; ++v) {
    int from = rng.below(v);
    int d = rng.below(dirs);
    s.edge[from][d] = v;
    incoming[v].push_back(from);
  }
  for (int v = 0; v < n; ++v) {
    for (int d = 0; d < dirs; ++d) {
      if (s.edge[v][d] == 0 && rng.chance(3, 4)) s.edge[v][d] = rng.below(n);
    }
  }
  s = prune_reachable(s);
  n = s.node_count();

  // One specification state per node with a free priority; the transition
  // relation contains exactly the tuples realized by the structure, so the
  // annotation is consistent by construction.
  ParityTreeAutomaton& spec = out.spec;
  spec.states = name_list("s", n);
  spec.initial = 0;
  for (int q = 0; q < n; ++q) spec.priority.push_back(rng.below(params.priorities));
  spec.transitions.assign(n, {});
  for (int q = 0; q < n; ++q) {
    spec.transitions[q].resize(1);
    std::vector<int> tuple(dirs);
    for (int d = 0; d < dirs; ++d) tuple[d] = s.edge[q][d];
    spec.transitions[q][0].push_back(std::move(tuple));
  }
  renormalize_priorities(spec);

  std::vector<std::vector<int>> mealy(n, std::vector<int>(1, 0));
  std::vector<int> wstate(n);
  for (int v = 0; v < n; ++v) wstate[v] = v;
  out.annotated = attach_labels(s, std::move(mealy), std::move(wstate));
  return out;
}

std::optional<DecisionStructure> random_uniform_structure(Rng& rng, const GameSpec& game,
                                                          int max_nodes, int attempts) {
  int dirs = game.direction_count();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    int n = 1 + rng.below(max_nodes);
    DecisionStructure s;
    s.nodes = name_list("v", n);
    s.initial = 0;
    s.frontier.assign(n, 0);
    s.choice.resize(n);
    s.edge.assign(n, std::vector<int>(dirs, 0));
    for (int v = 0; v < n; ++v) {
      s.choice[v] = rng.below(game.profile_count());
      for (int d = 0; d < dirs; ++d) s.edge[v][d] = rng.below(n);
    }
    s = prune_reachable(s);
    if (!check_strategy(s, game)) return s;
  }
  return std::nullopt;
}

std::optional<RetractionMap> random_retraction(Rng& rng, const AnnotatedStrategy& annotated,
                                               const GameSpec& game,
                                               const ParityTreeAutomaton& spec,
                                               const ProgressMeasure* measure, bool fix_initial,
                                               int attempts) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  // Group nodes by labels; only frontier-compatible folds are candidates.
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) {
    groups[{annotated.labels.mealy[v], annotated.labels.wstate[v]}].push_back(v);
  }
  for (int attempt = 0; attempt < attempts; ++attempt) {
    RetractionMap h = identity_map(n);
    bool moved = false;
    for (const auto& [label, members] : groups) {
      if (members.size() < 2) continue;
      for (int v : members) {
        if (fix_initial && v == s.initial) continue;
        if (!rng.chance(1, 3)) continue;
        int t = members[rng.below(static_cast<int>(members.size()))];
        if (t == v) continue;
        if (fix_initial && t == s.initial && v == s.initial) continue;
        if (s.is_frontier(t) && !s.is_frontier(v)) continue;
        if (measure) {
          int k = spec.priority[annotated.labels.wstate[v]];
          if (compare_lex(measure->mu[v], measure->mu[t], k) == LexOrder::Less) continue;
        }
        h.target[v] = t;
        moved = true;
      }
    }
    if (!moved) continue;
    // Collapse chains so the map needs only one application.
    for (int v = 0; v < n; ++v) {
      int t = h.target[v];
      int guard = n;
      while (h.target[t] != t && guard-- > 0) t = h.target[t];
      h.target[v] = t;
    }
    if (measure && check_monotone(annotated, spec, *measure, h)) continue;
    if (check_retraction(annotated, game, spec, h)) continue;
    return h;
  }
  return std::nullopt;
}

}  // namespace gamefold
