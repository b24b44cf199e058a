#include "gamefold/dstates.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gamefold {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

int DState::local_index(int ambient) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), ambient);
  if (it == nodes.end() || *it != ambient) return -1;
  return static_cast<int>(it - nodes.begin());
}

std::vector<DState> compute_dstates(const AnnotatedStrategy& annotated, const GameSpec& game,
                                    const UniformityRelation& uniformity) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  UnionFind uf(n);
  for (int i = 0; i < game.players; ++i) {
    for (auto [u, v] : uniformity.pairs[i]) uf.unite(u, v);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < n; ++v) groups[uf.find(v)].push_back(v);

  std::vector<DState> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) {
    DState d;
    d.nodes = members;  // map iteration gives ascending roots; members sorted
    for (int li = 0; li < d.size(); ++li) {
      int v = d.nodes[li];
      for (int dir = 0; dir < static_cast<int>(s.edge[v].size()); ++dir) {
        int w = s.edge[v][dir];
        int lw = d.local_index(w);
        if (lw >= 0) {
          d.edges.emplace_back(li, dir, lw);
        } else {
          d.exits.emplace_back(li, dir, w);
        }
      }
    }
    for (int i = 0; i < game.players; ++i) {
      for (auto [u, v] : uniformity.pairs[i]) {
        int lu = d.local_index(u);
        if (lu < 0) continue;
        int lv = d.local_index(v);
        if (lv < 0) continue;
        d.uniform_pairs.emplace_back(i, std::min(lu, lv), std::max(lu, lv));
      }
    }
    std::sort(d.uniform_pairs.begin(), d.uniform_pairs.end());
    d.uniform_pairs.erase(std::unique(d.uniform_pairs.begin(), d.uniform_pairs.end()),
                          d.uniform_pairs.end());
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

// The isomorphism signature covers edges, uniformity and labels; the choice
// function is not part of it, so a fold may redirect decisions.
struct NodeSignature {
  std::vector<int> mealy;
  int wstate;
  char frontier;
  std::vector<int> out_degree_local;   // per direction: 1 when the edge stays inside
  std::vector<int> uniform_degree;     // per player

  bool operator<(const NodeSignature& o) const {
    return std::tie(mealy, wstate, frontier, out_degree_local, uniform_degree) <
           std::tie(o.mealy, o.wstate, o.frontier, o.out_degree_local, o.uniform_degree);
  }
  bool operator==(const NodeSignature& o) const {
    return mealy == o.mealy && wstate == o.wstate && frontier == o.frontier &&
           out_degree_local == o.out_degree_local && uniform_degree == o.uniform_degree;
  }
};

NodeSignature signature_of(const AnnotatedStrategy& annotated, const DState& d, int local,
                           int players, int dirs, bool with_edges) {
  const DecisionStructure& s = annotated.structure;
  int v = d.nodes[local];
  NodeSignature sig;
  sig.mealy = annotated.labels.mealy[v];
  sig.wstate = annotated.labels.wstate[v];
  sig.frontier = s.is_frontier(v) ? 1 : 0;
  sig.out_degree_local.assign(with_edges ? dirs : 0, 0);
  for (auto [u, dir, w] : d.edges) {
    if (with_edges && u == local) sig.out_degree_local[dir] = 1;
  }
  sig.uniform_degree.assign(players, 0);
  for (auto [p, u, w] : d.uniform_pairs) {
    if (u == local || w == local) sig.uniform_degree[p]++;
  }
  return sig;
}

// Relational view of a d-state used by the backtracking matcher.
struct LocalView {
  std::vector<NodeSignature> sig;
  std::vector<std::vector<int>> edge;                    // [local][dir] -> local or -1
  std::vector<std::set<std::pair<int, int>>> uniform;    // per node: (player, other)
};

LocalView local_view(const AnnotatedStrategy& annotated, const DState& d, int players,
                     int dirs, bool with_edges) {
  LocalView view;
  int m = d.size();
  view.sig.reserve(m);
  for (int i = 0; i < m; ++i) {
    view.sig.push_back(signature_of(annotated, d, i, players, dirs, with_edges));
  }
  view.edge.assign(m, std::vector<int>(with_edges ? dirs : 0, -1));
  if (with_edges) {
    for (auto [u, dir, w] : d.edges) view.edge[u][dir] = w;
  }
  view.uniform.resize(m);
  for (auto [p, u, w] : d.uniform_pairs) {
    view.uniform[u].insert({p, w});
    view.uniform[w].insert({p, u});
  }
  return view;
}

bool extend_match(const LocalView& a, const LocalView& b, std::vector<int>& map,
                  std::vector<char>& used, int next) {
  int m = static_cast<int>(map.size());
  if (next == m) return true;
  for (int cand = 0; cand < m; ++cand) {
    if (used[cand] || !(a.sig[next] == b.sig[cand])) continue;
    bool ok = true;
    // Directed edges against already-mapped nodes, both directions.
    for (int dir = 0; dir < static_cast<int>(a.edge[next].size()) && ok; ++dir) {
      int w = a.edge[next][dir];
      if (w >= 0 && w <= next) {
        int image = w == next ? cand : map[w];
        if (b.edge[cand][dir] != image) ok = false;
      } else if (w < 0 && b.edge[cand][dir] >= 0) {
        ok = false;
      }
    }
    for (int prev = 0; prev < next && ok; ++prev) {
      for (int dir = 0; dir < static_cast<int>(a.edge[prev].size()) && ok; ++dir) {
        if (a.edge[prev][dir] == next && b.edge[map[prev]][dir] != cand) ok = false;
        if (a.edge[prev][dir] != next && b.edge[map[prev]][dir] == cand) ok = false;
      }
    }
    // Uniformity pairs against already-mapped nodes.
    for (auto [p, other] : a.uniform[next]) {
      if (!ok) break;
      if (other < next) {
        if (!b.uniform[cand].count({p, map[other]})) ok = false;
      } else if (other == next) {
        if (!b.uniform[cand].count({p, cand})) ok = false;
      }
    }
    for (int prev = 0; prev < next && ok; ++prev) {
      for (auto [p, other] : b.uniform[map[prev]]) {
        if (other == cand && !a.uniform[prev].count({p, next})) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    map[next] = cand;
    used[cand] = 1;
    if (extend_match(a, b, map, used, next + 1)) return true;
    used[cand] = 0;
    map[next] = -1;
  }
  return false;
}

}  // namespace

namespace {

std::optional<std::vector<int>> match_views(const AnnotatedStrategy& sa, const DState& a,
                                            const AnnotatedStrategy& sb, const DState& b,
                                            const IsomorphismOptions& opts) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() > opts.max_nodes) {
    throw Error(Error::Code::BudgetExceeded,
                "d-state of " + std::to_string(a.size()) +
                    " nodes exceeds the isomorphism bound of " + std::to_string(opts.max_nodes));
  }
  int players = sa.labels.mealy.empty() ? 0 : static_cast<int>(sa.labels.mealy[0].size());
  int dirs = sa.structure.edge.empty() ? 0 : static_cast<int>(sa.structure.edge[0].size());
  bool with_edges = !opts.ignore_internal_edges;
  LocalView va = local_view(sa, a, players, dirs, with_edges);
  LocalView vb = local_view(sb, b, players, dirs, with_edges);
  // Cheap invariants first.
  std::vector<NodeSignature> inv_a = va.sig, inv_b = vb.sig;
  std::sort(inv_a.begin(), inv_a.end());
  std::sort(inv_b.begin(), inv_b.end());
  if (!(inv_a == inv_b)) return std::nullopt;
  std::vector<int> map(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  if (extend_match(va, vb, map, used, 0)) return map;
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> isomorphic(const AnnotatedStrategy& annotated, const DState& a,
                                           const DState& b, const IsomorphismOptions& opts) {
  return match_views(annotated, a, annotated, b, opts);
}

std::optional<std::vector<int>> cross_isomorphic(const AnnotatedStrategy& sa, const DState& a,
                                                 const AnnotatedStrategy& sb, const DState& b,
                                                 const IsomorphismOptions& opts) {
  return match_views(sa, a, sb, b, opts);
}

ClassReport classify(const AnnotatedStrategy& annotated, const GameSpec& game,
                     const std::vector<DState>& dstates, const IsomorphismOptions& opts) {
  ClassReport report;
  std::vector<int> representative;  // d-state index per class
  for (size_t i = 0; i < dstates.size(); ++i) {
    report.max_dstate_size = std::max(report.max_dstate_size, dstates[i].size());
    bool placed = false;
    for (size_t c = 0; c < representative.size(); ++c) {
      if (isomorphic(annotated, dstates[representative[c]], dstates[i], opts)) {
        report.classes[c].push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    }
    if (!placed) {
      representative.push_back(static_cast<int>(i));
      report.classes.push_back({static_cast<int>(i)});
    }
  }
  for (const auto& cls : report.classes) {
    report.max_class_size = std::max(report.max_class_size, static_cast<int>(cls.size()));
  }
  return report;
}

bool classes_subset(const AnnotatedStrategy& before_s, const std::vector<DState>& before,
                    const AnnotatedStrategy& after_s, const std::vector<DState>& after,
                    const IsomorphismOptions& opts) {
  for (const DState& d_after : after) {
    // Components made of truncation leaves only are bookkeeping; they may
    // shrink or vanish as reachability changes.
    bool all_frontier = true;
    for (int v : d_after.nodes) {
      if (!after_s.structure.is_frontier(v)) {
        all_frontier = false;
        break;
      }
    }
    if (all_frontier) continue;
    bool found = false;
    for (const DState& d_before : before) {
      if (d_before.size() != d_after.size()) continue;
      if (cross_isomorphic(before_s, d_before, after_s, d_after, opts)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace gamefold
