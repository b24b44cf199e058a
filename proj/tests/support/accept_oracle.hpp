// Brute-force acceptance oracle: decides whether the specification automaton
// has an accepting run on the outcome of a finite structure by enumerating
// every positional choice of transition tuples on the product and checking
// all cycles directly. Independent of the solver and of is_witness.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "gamefold/annotation.hpp"

namespace testsupport {

struct AcceptOracle {
  const gamefold::DecisionStructure& s;
  const gamefold::GameSpec& game;
  const gamefold::ParityTreeAutomaton& spec;

  struct Node {
    int v;
    std::vector<int> mealy;
    int wstate;
    bool operator<(const Node& o) const {
      return std::tie(v, mealy, wstate) < std::tie(o.v, o.mealy, o.wstate);
    }
  };
  std::vector<Node> nodes;
  std::map<Node, int> index;
  // Per product node, the applicable tuples (each maps directions to
  // successor product node ids; -1 while interning).
  std::vector<std::vector<std::vector<int>>> options;

  AcceptOracle(const gamefold::DecisionStructure& s_, const gamefold::GameSpec& game_,
               const gamefold::ParityTreeAutomaton& spec_)
      : s(s_), game(game_), spec(spec_) {
    Node init;
    init.v = s.initial;
    init.wstate = spec.initial;
    for (int i = 0; i < game.players; ++i) init.mealy.push_back(game.observers[i].initial);
    intern(init);
    for (size_t head = 0; head < nodes.size(); ++head) {
      Node node = nodes[head];
      options.emplace_back();
      if (s.is_frontier(node.v)) continue;
      int a = s.choice[node.v];
      for (const auto& tuple : spec.tuples(node.wstate, a)) {
        std::vector<int> successors(game.direction_count());
        for (int d = 0; d < game.direction_count(); ++d) {
          Node next;
          next.v = s.edge[node.v][d];
          next.wstate = tuple[d];
          int g = game.move_index(a, d);
          for (int i = 0; i < game.players; ++i) {
            next.mealy.push_back(game.observers[i].next[node.mealy[i]][g]);
          }
          successors[d] = intern(next);
        }
        options[head].push_back(std::move(successors));
      }
    }
  }

  int intern(const Node& n) {
    auto it = index.find(n);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    index.emplace(n, id);
    nodes.push_back(n);
    return id;
  }

  // A cycle through a node of odd minimum priority, by explicit search on
  // the subgraph of priorities >= k.
  bool has_odd_cycle(const std::vector<int>& choice, const std::vector<char>& reachable) const {
    int n = static_cast<int>(nodes.size());
    int max_priority = 0;
    for (int u = 0; u < n; ++u) {
      if (reachable[u]) max_priority = std::max(max_priority, spec.priority[nodes[u].wstate]);
    }
    for (int k = 1; k <= max_priority; k += 2) {
      for (int x = 0; x < n; ++x) {
        if (!reachable[x] || spec.priority[nodes[x].wstate] != k) continue;
        // BFS from x's successors within the >= k subgraph back to x.
        std::vector<char> seen(n, 0);
        std::vector<int> queue;
        auto expand = [&](int u) {
          if (s.is_frontier(nodes[u].v)) return;
          for (int w : options[u][choice[u]]) {
            if (!reachable[w] || spec.priority[nodes[w].wstate] < k) continue;
            if (!seen[w]) {
              seen[w] = 1;
              queue.push_back(w);
            }
          }
        };
        expand(x);
        for (size_t q = 0; q < queue.size(); ++q) expand(queue[q]);
        if (seen[x]) return true;
      }
    }
    return false;
  }

  // Evaluates one positional choice function.
  bool accepting(const std::vector<int>& choice) const {
    int n = static_cast<int>(nodes.size());
    std::vector<char> reachable(n, 0);
    std::vector<int> queue{0};
    reachable[0] = 1;
    for (size_t q = 0; q < queue.size(); ++q) {
      int u = queue[q];
      if (s.is_frontier(nodes[u].v)) continue;
      if (options[u].empty()) return false;  // run is stuck
      for (int w : options[u][choice[u]]) {
        if (!reachable[w]) {
          reachable[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return !has_odd_cycle(choice, reachable);
  }

  // True when some positional tuple choice yields an accepting run.
  // Positional choices suffice on finite products (parity memoryless
  // determinacy), so this is a complete oracle for run existence.
  std::optional<bool> accepts(long long budget = 4'000'000) const {
    int n = static_cast<int>(nodes.size());
    long long combos = 1;
    std::vector<int> width(n, 1);
    for (int u = 0; u < n; ++u) {
      if (!options[u].empty()) width[u] = static_cast<int>(options[u].size());
      combos *= width[u];
      if (combos > budget) return std::nullopt;
    }
    std::vector<int> choice(n, 0);
    while (true) {
      if (accepting(choice)) return true;
      int pos = 0;
      while (pos < n) {
        if (++choice[pos] < width[pos]) break;
        choice[pos] = 0;
        pos++;
      }
      if (pos == n) return false;
    }
  }
};

inline std::optional<bool> oracle_accepts(const gamefold::DecisionStructure& s,
                                          const gamefold::GameSpec& game,
                                          const gamefold::ParityTreeAutomaton& spec,
                                          long long budget = 4'000'000) {
  AcceptOracle oracle(s, game, spec);
  return oracle.accepts(budget);
}

}  // namespace testsupport
