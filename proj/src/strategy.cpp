#include "gamefold/strategy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gamefold {

DecisionStructure prune_reachable(const DecisionStructure& s, std::vector<int>* old_to_new) {
  std::vector<int> remap(s.node_count(), -1);
  std::vector<int> order;
  std::deque<int> queue;
  remap[s.initial] = 0;
  order.push_back(s.initial);
  queue.push_back(s.initial);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int target : s.edge[v]) {
      if (target >= 0 && remap[target] < 0) {
        remap[target] = static_cast<int>(order.size());
        order.push_back(target);
        queue.push_back(target);
      }
    }
  }
  DecisionStructure out;
  out.initial = 0;
  out.nodes.reserve(order.size());
  for (int old : order) {
    out.nodes.push_back(s.nodes[old]);
    out.choice.push_back(s.choice[old]);
    std::vector<int> edges;
    edges.reserve(s.edge[old].size());
    for (int target : s.edge[old]) edges.push_back(target >= 0 ? remap[target] : -1);
    out.edge.push_back(std::move(edges));
    out.frontier.push_back(s.is_frontier(old) ? 1 : 0);
  }
  if (old_to_new) *old_to_new = remap;
  return out;
}

std::vector<Diagnostic> validate_structure(const DecisionStructure& s, const GameSpec& game) {
  std::vector<Diagnostic> diags;
  auto add = [&](const std::string& code, const std::string& msg) {
    diags.push_back({code, msg});
  };
  if (s.nodes.empty()) {
    add("EmptyStructure", "decision structure has no nodes");
    return diags;
  }
  if (s.initial < 0 || s.initial >= s.node_count()) {
    add("BadInitialNode", "initial node out of range");
  }
  int dirs = game.direction_count();
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.choice[v] < 0 || s.choice[v] >= game.profile_count()) {
      add("BadChoice", "node " + s.nodes[v] + " has no valid action profile");
    }
    if (static_cast<int>(s.edge[v].size()) != dirs) {
      add("IncompleteEdges", "node " + s.nodes[v] + " must have one edge per direction");
      continue;
    }
    for (int d = 0; d < dirs; ++d) {
      if (s.edge[v][d] < 0 || s.edge[v][d] >= s.node_count()) {
        add("IncompleteEdges", "node " + s.nodes[v] + " missing edge for direction " +
                                   game.directions[d]);
      }
    }
  }
  return diags;
}

void require_valid(const DecisionStructure& s, const GameSpec& game) {
  auto diags = validate_structure(s, game);
  if (!diags.empty()) {
    throw Error(Error::Code::Validation, diags.front().code + ": " + diags.front().message);
  }
}

TraceResult trace(const DecisionStructure& s, const GameSpec& game, const History& history) {
  TraceResult result;
  int v = s.initial;
  result.path.push_back(v);
  for (size_t k = 0; k < history.size(); ++k) {
    const Move& m = history[k];
    if (m.dir < 0 || m.dir >= game.direction_count()) {
      throw Error(Error::Code::Validation, "malformed move at index " + std::to_string(k));
    }
    if (m.profile != s.choice[v]) result.follows = false;
    v = s.edge[v][m.dir];
    result.path.push_back(v);
  }
  return result;
}

namespace {

struct ProductState {
  int u, v, qu, qv;
  bool operator<(const ProductState& o) const {
    if (u != o.u) return u < o.u;
    if (v != o.v) return v < o.v;
    if (qu != o.qu) return qu < o.qu;
    return qv < o.qv;
  }
};

struct ProductSearch {
  std::map<ProductState, int> index;
  std::vector<ProductState> states;
  std::vector<int> parent;
  std::vector<std::pair<Move, Move>> via;

  int intern(const ProductState& st, int from, Move mu, Move mv) {
    auto it = index.find(st);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(states.size());
    index.emplace(st, id);
    states.push_back(st);
    parent.push_back(from);
    via.push_back({mu, mv});
    return id;
  }

  std::pair<History, History> reconstruct(int id) const {
    History a, b;
    while (parent[id] >= 0) {
      a.push_back(via[id].first);
      b.push_back(via[id].second);
      id = parent[id];
    }
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    return {a, b};
  }
};

// Synchronized reachability over (node, node, observer state, observer
// state): step both sides with moves whose observations agree. Calls visit
// on every discovered product state; visit may stop the search early.
template <typename Visit>
void explore_pairs(const DecisionStructure& s, const GameSpec& game, int player,
                   bool all_histories, ProductSearch& search, Visit visit) {
  const MealyMachine& machine = game.observers[player];
  int dirs = game.direction_count();
  int profiles = game.profile_count();
  ProductState init{s.initial, s.initial, machine.initial, machine.initial};
  search.intern(init, -1, Move{}, Move{});
  for (size_t head = 0; head < search.states.size(); ++head) {
    ProductState st = search.states[head];
    if (!visit(static_cast<int>(head), st)) return;
    int profiles_u_lo = all_histories ? 0 : s.choice[st.u];
    int profiles_u_hi = all_histories ? profiles - 1 : s.choice[st.u];
    for (int au = profiles_u_lo; au <= profiles_u_hi; ++au) {
      for (int du = 0; du < dirs; ++du) {
        int gu = game.move_index(au, du);
        int profiles_v_lo = all_histories ? 0 : s.choice[st.v];
        int profiles_v_hi = all_histories ? profiles - 1 : s.choice[st.v];
        for (int av = profiles_v_lo; av <= profiles_v_hi; ++av) {
          for (int dv = 0; dv < dirs; ++dv) {
            int gv = game.move_index(av, dv);
            if (machine.output[st.qu][gu] != machine.output[st.qv][gv]) continue;
            ProductState nx{s.edge[st.u][du], s.edge[st.v][dv], machine.next[st.qu][gu],
                            machine.next[st.qv][gv]};
            search.intern(nx, static_cast<int>(head), Move{au, du}, Move{av, dv});
          }
        }
      }
    }
  }
}

}  // namespace

bool UniformityRelation::related(int player, int u, int v) const {
  if (u > v) std::swap(u, v);
  const auto& list = pairs[player];
  return std::binary_search(list.begin(), list.end(), std::make_pair(u, v));
}

std::vector<std::pair<int, int>> UniformityRelation::union_pairs() const {
  std::vector<std::pair<int, int>> all;
  for (const auto& list : pairs) all.insert(all.end(), list.begin(), list.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

UniformityRelation compute_uniformity(const DecisionStructure& s, const GameSpec& game,
                                      const UniformityOptions& opts) {
  UniformityRelation rel;
  rel.pairs.resize(game.players);
  for (int i = 0; i < game.players; ++i) {
    std::set<std::pair<int, int>> found;
    ProductSearch search;
    explore_pairs(s, game, i, opts.all_histories, search, [&](int, const ProductState& st) {
      int u = st.u, v = st.v;
      if (u > v) std::swap(u, v);
      found.insert({u, v});
      return true;
    });
    rel.pairs[i].assign(found.begin(), found.end());
  }
  return rel;
}

std::optional<StrategyViolation> check_strategy(const DecisionStructure& s, const GameSpec& game,
                                                const UniformityOptions& opts) {
  for (int i = 0; i < game.players; ++i) {
    ProductSearch search;
    std::optional<StrategyViolation> hit;
    explore_pairs(s, game, i, opts.all_histories, search, [&](int id, const ProductState& st) {
      if (game.profile_component(s.choice[st.u], i) !=
          game.profile_component(s.choice[st.v], i)) {
        StrategyViolation violation;
        violation.player = i;
        violation.u = st.u;
        violation.v = st.v;
        auto [wu, wv] = search.reconstruct(id);
        violation.witness_u = std::move(wu);
        violation.witness_v = std::move(wv);
        hit = std::move(violation);
        return false;
      }
      return true;
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

DecisionStructure unravel(const DecisionStructure& s, const GameSpec& game, int depth) {
  if (depth < 0) throw Error(Error::Code::Precondition, "depth must be non-negative");
  int dirs = game.direction_count();
  DecisionStructure out;
  // Nodes are direction strings in breadth-first order.
  struct Item {
    int origin;
    int level;
  };
  std::vector<Item> items;
  items.push_back({s.initial, 0});
  out.nodes.push_back("e");
  out.choice.push_back(s.choice[s.initial]);
  out.frontier.push_back(depth == 0 ? 1 : 0);
  out.edge.emplace_back();
  for (size_t head = 0; head < items.size(); ++head) {
    Item item = items[head];
    if (item.level == depth) {
      out.edge[head].assign(dirs, static_cast<int>(head));
      continue;
    }
    for (int d = 0; d < dirs; ++d) {
      int id = static_cast<int>(items.size());
      items.push_back({s.edge[item.origin][d], item.level + 1});
      std::string name = out.nodes[head] == "e" ? game.directions[d]
                                                : out.nodes[head] + game.directions[d];
      out.nodes.push_back(name);
      out.choice.push_back(s.choice[items.back().origin]);
      out.frontier.push_back(item.level + 1 == depth ? 1 : 0);
      out.edge.emplace_back();
      out.edge[head].push_back(id);
    }
  }
  out.initial = 0;
  return out;
}

PrivateMooreMachine project_private(const DecisionStructure& s, const GameSpec& game,
                                    int player) {
  if (auto violation = check_strategy(s, game)) {
    throw Error(Error::Code::NonUniform,
                "projection undefined: player " + std::to_string(violation->player) +
                    " acts differently at related nodes " + s.nodes[violation->u] + " and " +
                    s.nodes[violation->v]);
  }
  const MealyMachine& machine = game.observers[player];
  int dirs = game.direction_count();
  using Knowledge = std::vector<std::pair<int, int>>;  // (node, observer state), sorted
  std::map<Knowledge, int> index;
  std::vector<Knowledge> sets;
  PrivateMooreMachine out;
  Knowledge init{{s.initial, machine.initial}};
  index.emplace(init, 0);
  sets.push_back(init);
  for (size_t head = 0; head < sets.size(); ++head) {
    Knowledge current = sets[head];
    // Output: the player component of the choice, unique by uniformity.
    int act = game.profile_component(s.choice[current.front().first], player);
    out.action.push_back(act);
    std::string name = "{";
    for (size_t j = 0; j < current.size(); ++j) {
      if (j) name += " ";
      name += s.nodes[current[j].first] + "." + machine.states[current[j].second];
    }
    name += "}";
    out.states.push_back(name);
    std::map<int, std::set<std::pair<int, int>>> successors;
    for (auto [v, q] : current) {
      int a = s.choice[v];
      for (int d = 0; d < dirs; ++d) {
        int g = game.move_index(a, d);
        successors[machine.output[q][g]].insert({s.edge[v][d], machine.next[q][g]});
      }
    }
    for (const auto& [obs, target_set] : successors) {
      Knowledge target(target_set.begin(), target_set.end());
      auto [it, inserted] = index.emplace(target, static_cast<int>(sets.size()));
      if (inserted) sets.push_back(target);
      out.next[{static_cast<int>(head), obs}] = it->second;
    }
  }
  out.initial = 0;
  return out;
}

}  // namespace gamefold
