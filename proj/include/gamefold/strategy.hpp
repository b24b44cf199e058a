// Decision structures, the uniformity relation induced by indistinguishable
// histories, uniformity checking, tree unravelling and projection to private
// Moore machines.
#pragma once

#include <map>
#include <optional>

#include "gamefold/game.hpp"

namespace gamefold {

/// Deterministic direction-driven graph with an action profile at each node.
/// Frontier flags mark cut leaves of truncated unravellings; edges leaving a
/// frontier node are excluded from acceptance and measure checks.
struct DecisionStructure {
  std::vector<std::string> nodes;
  int initial = 0;
  std::vector<int> choice;               // action profile per node
  std::vector<std::vector<int>> edge;    // [node][direction] -> node
  std::vector<char> frontier;

  int node_count() const { return static_cast<int>(nodes.size()); }
  bool is_frontier(int v) const {
    return v < static_cast<int>(frontier.size()) && frontier[v];
  }
};

/// Drops nodes unreachable from the initial node, renumbering the rest in
/// BFS discovery order (directions ascending). old_to_new, when given,
/// receives the node renumbering (-1 for dropped nodes).
DecisionStructure prune_reachable(const DecisionStructure& s,
                                  std::vector<int>* old_to_new = nullptr);

std::vector<Diagnostic> validate_structure(const DecisionStructure& s, const GameSpec& game);
void require_valid(const DecisionStructure& s, const GameSpec& game);

struct TraceResult {
  std::vector<int> path;
  bool follows = true;
};

/// Unique node path driven by the history's directions, plus whether every
/// action profile matches the choice function along the way.
TraceResult trace(const DecisionStructure& s, const GameSpec& game, const History& history);

struct UniformityOptions {
  // When set, the relation quantifies over all histories rather than just
  // the ones that follow the structure.
  bool all_histories = false;
};

struct UniformityRelation {
  // Per player, sorted unique pairs (u, v) with u <= v.
  std::vector<std::vector<std::pair<int, int>>> pairs;

  bool related(int player, int u, int v) const;
  /// Union over all players, sorted unique.
  std::vector<std::pair<int, int>> union_pairs() const;
};

UniformityRelation compute_uniformity(const DecisionStructure& s, const GameSpec& game,
                                      const UniformityOptions& opts = {});

struct StrategyViolation {
  int player = 0;
  int u = 0;
  int v = 0;
  History witness_u;
  History witness_v;
};

/// Empty result means the structure is a strategy structure: related nodes
/// always prescribe the same action for the relating player.
std::optional<StrategyViolation> check_strategy(const DecisionStructure& s, const GameSpec& game,
                                                const UniformityOptions& opts = {});

/// Tree-shaped copy on direction strings of length <= depth; cut leaves are
/// marked frontier and loop to themselves.
DecisionStructure unravel(const DecisionStructure& s, const GameSpec& game, int depth);

/// Deterministic machine over one player's observation letters; states are
/// knowledge sets of (node, observer state) pairs sharing an observation
/// history. Transitions are partial: letters that cannot occur have none.
struct PrivateMooreMachine {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> action;                    // player action index per state
  std::map<std::pair<int, int>, int> next;    // (state, observation) -> state
};

/// Requires a uniform structure; throws Error::NonUniform otherwise.
PrivateMooreMachine project_private(const DecisionStructure& s, const GameSpec& game, int player);

}  // namespace gamefold
