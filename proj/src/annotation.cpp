#include "gamefold/annotation.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "gamefold/arena.hpp"

namespace gamefold {

std::optional<AnnotationViolation> check_annotation(const AnnotatedStrategy& annotated,
                                                    const GameSpec& game,
                                                    const ParityTreeAutomaton& spec) {
  const DecisionStructure& s = annotated.structure;
  const Annotation& rho = annotated.labels;
  int n = s.node_count();
  if (static_cast<int>(rho.wstate.size()) != n ||
      static_cast<int>(rho.mealy.size()) != n) {
    return AnnotationViolation{AnnotationViolation::Kind::UndeclaredState, 0, -1, -1,
                               "label table size mismatch"};
  }
  for (int v = 0; v < n; ++v) {
    if (rho.wstate[v] < 0 || rho.wstate[v] >= spec.state_count()) {
      return AnnotationViolation{AnnotationViolation::Kind::UndeclaredState, v, -1, -1,
                                 "specification label out of range"};
    }
    for (int i = 0; i < game.players; ++i) {
      if (rho.mealy[v][i] < 0 || rho.mealy[v][i] >= game.observers[i].state_count()) {
        return AnnotationViolation{AnnotationViolation::Kind::UndeclaredState, v, -1, i,
                                   "observer label out of range"};
      }
    }
  }
  for (int i = 0; i < game.players; ++i) {
    if (rho.mealy[s.initial][i] != game.observers[i].initial) {
      return AnnotationViolation{AnnotationViolation::Kind::InitialLabel, s.initial, -1, i,
                                 "initial observer label differs from the initial state"};
    }
  }
  if (rho.wstate[s.initial] != spec.initial) {
    return AnnotationViolation{AnnotationViolation::Kind::InitialLabel, s.initial, -1, -1,
                               "initial specification label differs from the initial state"};
  }
  int dirs = game.direction_count();
  for (int v = 0; v < n; ++v) {
    if (s.is_frontier(v)) continue;
    int a = s.choice[v];
    for (int d = 0; d < dirs; ++d) {
      int w = s.edge[v][d];
      int g = game.move_index(a, d);
      for (int i = 0; i < game.players; ++i) {
        if (rho.mealy[w][i] != game.observers[i].next[rho.mealy[v][i]][g]) {
          return AnnotationViolation{AnnotationViolation::Kind::MealyStep, v, d, i,
                                     "observer run does not advance by the transition function"};
        }
      }
    }
    std::vector<int> successors(dirs);
    for (int d = 0; d < dirs; ++d) successors[d] = rho.wstate[s.edge[v][d]];
    const auto& tuples = spec.tuples(rho.wstate[v], a);
    if (std::find(tuples.begin(), tuples.end(), successors) == tuples.end()) {
      return AnnotationViolation{AnnotationViolation::Kind::RunStep, v, -1, -1,
                                 "successor labels form no transition of the specification"};
    }
  }
  return std::nullopt;
}

namespace {

// Tarjan strongly connected components restricted to a node filter and to
// edges leaving non-frontier nodes.
struct SccDecomposition {
  std::vector<int> component;  // -1 outside the filter
  int count = 0;
};

SccDecomposition scc_restricted(const DecisionStructure& s, const std::vector<char>& keep) {
  int n = s.node_count();
  SccDecomposition out;
  out.component.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;

  // Iterative Tarjan.
  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (!keep[root] || index[root] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      int v = f.v;
      bool descended = false;
      size_t degree = s.is_frontier(v) ? 0 : s.edge[v].size();
      while (f.edge < degree) {
        int w = s.edge[v][f.edge++];
        if (!keep[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.component[w] = out.count;
          if (w == v) break;
        }
        out.count++;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }
  return out;
}

std::vector<int> path_between(const DecisionStructure& s, int from, int to,
                              const std::vector<char>* keep, bool proper_step) {
  // BFS; when proper_step is set the path must take at least one edge.
  int n = s.node_count();
  std::vector<int> parent(n, -2);
  std::deque<int> queue;
  if (proper_step) {
    if (!s.is_frontier(from)) {
      for (int w : s.edge[from]) {
        if (keep && !(*keep)[w]) continue;
        if (parent[w] == -2) {
          parent[w] = from;
          queue.push_back(w);
        }
      }
    }
  } else {
    parent[from] = -1;
    queue.push_back(from);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == to) break;
    if (s.is_frontier(v)) continue;
    for (int w : s.edge[v]) {
      if (keep && !(*keep)[w]) continue;
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  std::vector<int> path;
  if (parent[to] == -2) return path;
  int v = to;
  path.push_back(v);
  while (parent[v] >= 0) {
    v = parent[v];
    path.push_back(v);
    if (v == from && static_cast<int>(path.size()) > 1 && proper_step) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

WitnessResult is_witness(const AnnotatedStrategy& annotated, const ParityTreeAutomaton& spec) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  auto node_priority = [&](int v) { return spec.priority[annotated.labels.wstate[v]]; };
  int max_priority = 0;
  for (int v = 0; v < n; ++v) max_priority = std::max(max_priority, node_priority(v));
  for (int k = 1; k <= max_priority; k += 2) {
    std::vector<char> keep(n, 0);
    for (int v = 0; v < n; ++v) keep[v] = node_priority(v) >= k ? 1 : 0;
    SccDecomposition scc = scc_restricted(s, keep);
    // A component rejects when it contains an internal edge and a node of
    // priority exactly k.
    std::vector<char> has_edge(scc.count, 0);
    for (int v = 0; v < n; ++v) {
      if (!keep[v] || s.is_frontier(v)) continue;
      for (int w : s.edge[v]) {
        if (keep[w] && scc.component[w] == scc.component[v]) has_edge[scc.component[v]] = 1;
      }
    }
    for (int v = 0; v < n; ++v) {
      if (!keep[v] || node_priority(v) != k || !has_edge[scc.component[v]]) continue;
      std::vector<char> in_comp(n, 0);
      for (int u = 0; u < n; ++u) {
        in_comp[u] = keep[u] && scc.component[u] == scc.component[v] ? 1 : 0;
      }
      std::vector<int> cycle = path_between(s, v, v, &in_comp, true);
      if (cycle.empty()) continue;
      Lasso lasso;
      lasso.cycle = cycle;
      lasso.stem = path_between(s, s.initial, v, nullptr, false);
      WitnessResult result;
      result.accepting = false;
      result.counterexample = std::move(lasso);
      return result;
    }
  }
  return WitnessResult{true, std::nullopt};
}

std::optional<AnnotatedStrategy> find_witness_annotation(const DecisionStructure& s,
                                                         const GameSpec& game,
                                                         const ParityTreeAutomaton& spec) {
  int dirs = game.direction_count();

  // Product states: (node, observer profile, specification state).
  struct Product {
    int node;
    std::vector<int> mealy;
    int wstate;
    bool operator<(const Product& o) const {
      if (node != o.node) return node < o.node;
      if (wstate != o.wstate) return wstate < o.wstate;
      return mealy < o.mealy;
    }
  };

  std::map<Product, int> index;
  std::vector<Product> products;
  auto intern = [&](const Product& p) {
    auto it = index.find(p);
    if (it != index.end()) return std::make_pair(it->second, false);
    int id = static_cast<int>(products.size());
    index.emplace(p, id);
    products.push_back(p);
    return std::make_pair(id, true);
  };

  Product init;
  init.node = s.initial;
  init.wstate = spec.initial;
  for (int i = 0; i < game.players; ++i) init.mealy.push_back(game.observers[i].initial);
  intern(init);

  ParityArena arena;
  // Automaton positions come first in product discovery order; Pathfinder
  // positions are appended per (product, tuple).
  std::vector<int> automaton_pos;
  struct PathfinderInfo {
    int product;
    int tuple;
  };
  std::vector<PathfinderInfo> pathfinders;

  for (size_t head = 0; head < products.size(); ++head) {
    Product p = products[head];
    int pos = static_cast<int>(arena.positions.size());
    automaton_pos.push_back(pos);
    arena.positions.push_back({0, spec.priority[p.wstate], "A" + std::to_string(head)});
    arena.moves.emplace_back();
    if (s.is_frontier(p.node)) {
      // Truncation leaves carry no acceptance obligation.
      arena.positions[pos].priority = 0;
      arena.moves[pos].push_back({-1, pos});
      continue;
    }
    int a = s.choice[p.node];
    const auto& tuples = spec.tuples(p.wstate, a);
    for (size_t t = 0; t < tuples.size(); ++t) {
      int ppos = static_cast<int>(arena.positions.size());
      arena.positions.push_back({1, spec.priority[p.wstate],
                                 "P" + std::to_string(head) + "." + std::to_string(t)});
      arena.moves.emplace_back();
      pathfinders.push_back({static_cast<int>(head), static_cast<int>(t)});
      arena.moves[pos].push_back({static_cast<int>(t), ppos});
      for (int d = 0; d < dirs; ++d) {
        Product q;
        q.node = s.edge[p.node][d];
        q.wstate = tuples[t][d];
        int g = game.move_index(a, d);
        for (int i = 0; i < game.players; ++i) {
          q.mealy.push_back(game.observers[i].next[p.mealy[i]][g]);
        }
        auto [qid, fresh] = intern(q);
        (void)fresh;
        // Successor automaton position ids are assigned on discovery; store
        // the product id and patch after construction.
        arena.moves[ppos].push_back({d, -1 - qid});
      }
    }
  }
  // Patch product ids to arena position ids.
  for (auto& move_list : arena.moves) {
    for (auto& [label, target] : move_list) {
      if (target < 0) target = automaton_pos[-1 - target];
    }
  }
  arena.totalize();

  ArenaSolution sol = solve_parity(arena);
  if (!sol.protagonist_wins[automaton_pos[0]]) return std::nullopt;

  // Reachable products under the positional tuple choice become the refined
  // strategy; labels read off the product components.
  AnnotatedStrategy out;
  std::map<int, int> product_to_node;
  std::vector<int> order;
  std::deque<int> queue;
  product_to_node[0] = 0;
  order.push_back(0);
  queue.push_back(0);
  while (!queue.empty()) {
    int pid = queue.front();
    queue.pop_front();
    const Product& p = products[pid];
    if (s.is_frontier(p.node)) continue;
    int pos = automaton_pos[pid];
    int choice = sol.strategy[pos];
    if (choice < 0) {
      throw Error(Error::Code::Internal, "winning region lost its strategy");
    }
    int ppos = arena.moves[pos][choice].second;
    for (auto [d, target] : arena.moves[ppos]) {
      // Recover the product id from the automaton position.
      int qid = static_cast<int>(std::lower_bound(automaton_pos.begin(), automaton_pos.end(),
                                                  target) -
                                 automaton_pos.begin());
      if (!product_to_node.count(qid)) {
        product_to_node[qid] = static_cast<int>(order.size());
        order.push_back(qid);
        queue.push_back(qid);
      }
    }
  }

  for (int pid : order) {
    const Product& p = products[pid];
    std::string name = s.nodes[p.node] + "|" + spec.states[p.wstate];
    for (int i = 0; i < game.players; ++i) {
      name += "|" + game.observers[i].states[p.mealy[i]];
    }
    out.structure.nodes.push_back(name);
    out.structure.choice.push_back(s.choice[p.node]);
    out.structure.frontier.push_back(s.is_frontier(p.node) ? 1 : 0);
    out.labels.mealy.push_back(p.mealy);
    out.labels.wstate.push_back(p.wstate);
    std::vector<int> edges(dirs, -1);
    if (s.is_frontier(p.node)) {
      for (int d = 0; d < dirs; ++d) edges[d] = product_to_node.at(pid);
    } else {
      int pos = automaton_pos[pid];
      int ppos = arena.moves[pos][sol.strategy[pos]].second;
      for (auto [d, target] : arena.moves[ppos]) {
        int qid = static_cast<int>(std::lower_bound(automaton_pos.begin(), automaton_pos.end(),
                                                    target) -
                                   automaton_pos.begin());
        edges[d] = product_to_node.at(qid);
      }
    }
    out.structure.edge.push_back(std::move(edges));
  }
  out.structure.initial = 0;
  return out;
}

AnnotatedStrategy annotate_tree(const DecisionStructure& s, const GameSpec& game,
                                const ParityTreeAutomaton& spec, int depth) {
  auto refined = find_witness_annotation(s, game, spec);
  if (!refined) {
    throw Error(Error::Code::NoWitness, "no witnessing annotation exists for this structure");
  }
  DecisionStructure tree = unravel(refined->structure, game, depth);
  AnnotatedStrategy out;
  out.structure = tree;
  int n = tree.node_count();
  out.labels.mealy.resize(n);
  out.labels.wstate.resize(n);
  // Unravel assigns nodes in BFS order; replay the same expansion to map
  // tree nodes onto product nodes.
  std::vector<int> origin(n, -1);
  origin[0] = refined->structure.initial;
  int cursor = 1;
  for (int v = 0; v < n; ++v) {
    out.labels.mealy[v] = refined->labels.mealy[origin[v]];
    out.labels.wstate[v] = refined->labels.wstate[origin[v]];
    if (tree.is_frontier(v)) continue;
    for (int d = 0; d < game.direction_count(); ++d) {
      origin[cursor++] = refined->structure.edge[origin[v]][d];
    }
  }
  return out;
}

AnnotatedStrategy attach_labels(const DecisionStructure& s, std::vector<std::vector<int>> mealy,
                                std::vector<int> wstate) {
  AnnotatedStrategy out;
  out.structure = s;
  out.labels.mealy = std::move(mealy);
  out.labels.wstate = std::move(wstate);
  return out;
}

}  // namespace gamefold
