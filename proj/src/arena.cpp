#include "gamefold/arena.hpp"

#include <algorithm>
#include <deque>

#include "gamefold/game.hpp"

namespace gamefold {

void ParityArena::totalize() {
  moves.resize(positions.size());
  for (int v = 0; v < position_count(); ++v) {
    if (moves[v].empty()) {
      positions[v].priority = positions[v].owner == 0 ? 1 : 0;
      moves[v].push_back({-1, v});
    }
  }
}

namespace {

// Measures are tuples of length r with non-zero entries only at odd
// indices, each bounded by the number of positions carrying that priority.
struct MeasureSpace {
  int r = 0;
  std::vector<unsigned> bound;

  std::vector<unsigned> zero() const { return std::vector<unsigned>(r, 0); }
};

// Lexicographic comparison of prefixes up to index k.
int compare_prefix(const std::vector<unsigned>& x, const std::vector<unsigned>& y, int k) {
  for (int i = 0; i <= k; ++i) {
    if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
  }
  return 0;
}

// Least measure m with m >=_k target (strict when k is odd); false when the
// space is exhausted.
bool prog(const MeasureSpace& space, const std::vector<unsigned>& target, int k, bool target_top,
          std::vector<unsigned>& out, bool& out_top) {
  if (target_top) {
    out_top = true;
    return true;
  }
  out.assign(space.r, 0);
  for (int i = 0; i <= k; ++i) out[i] = target[i];
  if (k % 2 == 0) {
    out_top = false;
    return true;
  }
  for (int i = k; i >= 0; --i) {
    if (i % 2 == 0) continue;
    if (out[i] < space.bound[i]) {
      out[i] += 1;
      for (int j = i + 1; j <= k; ++j) out[j] = 0;
      out_top = false;
      return true;
    }
    out[i] = 0;
  }
  out_top = true;
  return true;
}

int compare_full(const std::vector<unsigned>& x, bool xt, const std::vector<unsigned>& y,
                 bool yt) {
  if (xt && yt) return 0;
  if (xt) return 1;
  if (yt) return -1;
  return compare_prefix(x, y, static_cast<int>(x.size()) - 1);
}

}  // namespace

ArenaSolution solve_parity(const ParityArena& arena) {
  int n = arena.position_count();
  MeasureSpace space;
  for (const auto& p : arena.positions) space.r = std::max(space.r, p.priority + 1);
  space.bound.assign(space.r, 0);
  for (const auto& p : arena.positions) {
    if (p.priority % 2 == 1) space.bound[p.priority] += 1;
  }

  ArenaSolution sol;
  sol.priority_count = space.r;
  sol.measure.assign(n, space.zero());
  sol.top.assign(n, 0);

  std::vector<std::vector<int>> preds(n);
  for (int v = 0; v < n; ++v) {
    for (auto [label, w] : arena.moves[v]) preds[w].push_back(v);
  }

  auto lift_value = [&](int v, std::vector<unsigned>& best, bool& best_top) {
    int k = arena.positions[v].priority;
    bool first = true;
    for (auto [label, w] : arena.moves[v]) {
      std::vector<unsigned> cand;
      bool cand_top = false;
      prog(space, sol.measure[w], k, sol.top[w] != 0, cand, cand_top);
      if (first) {
        best = cand;
        best_top = cand_top;
        first = false;
        continue;
      }
      int cmp = compare_full(cand, cand_top, best, best_top);
      if (arena.positions[v].owner == 0 ? cmp < 0 : cmp > 0) {
        best = cand;
        best_top = cand_top;
      }
    }
  };

  std::deque<int> queue;
  std::vector<char> queued(n, 1);
  for (int v = 0; v < n; ++v) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    std::vector<unsigned> best;
    bool best_top = false;
    lift_value(v, best, best_top);
    if (compare_full(best, best_top, sol.measure[v], sol.top[v] != 0) > 0) {
      sol.measure[v] = best;
      sol.top[v] = best_top ? 1 : 0;
      for (int u : preds[v]) {
        if (!queued[u]) {
          queued[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }

  sol.protagonist_wins.assign(n, 0);
  sol.strategy.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (sol.top[v]) continue;
    sol.protagonist_wins[v] = 1;
    if (arena.positions[v].owner != 0) continue;
    int k = arena.positions[v].priority;
    int best_idx = -1;
    std::vector<unsigned> best;
    bool best_top = true;
    for (size_t i = 0; i < arena.moves[v].size(); ++i) {
      int w = arena.moves[v][i].second;
      std::vector<unsigned> cand;
      bool cand_top = false;
      prog(space, sol.measure[w], k, sol.top[w] != 0, cand, cand_top);
      if (best_idx < 0 || compare_full(cand, cand_top, best, best_top) < 0) {
        best_idx = static_cast<int>(i);
        best = cand;
        best_top = cand_top;
      }
    }
    sol.strategy[v] = best_idx;
  }
  return sol;
}

bool check_arena_certificate(const ParityArena& arena, const ArenaSolution& sol) {
  int n = arena.position_count();
  MeasureSpace space;
  space.r = sol.priority_count;
  space.bound.assign(std::max(space.r, 1), 0);
  for (const auto& p : arena.positions) {
    if (p.priority % 2 == 1) space.bound[p.priority] += 1;
  }
  auto edge_ok = [&](int v, int w) {
    if (sol.top[w]) return false;
    int k = arena.positions[v].priority;
    int cmp = compare_prefix(sol.measure[v], sol.measure[w], k);
    return k % 2 == 0 ? cmp >= 0 : cmp > 0;
  };
  for (int v = 0; v < n; ++v) {
    if (sol.top[v]) continue;
    if (arena.positions[v].owner == 0) {
      int idx = sol.strategy[v];
      if (idx < 0 || idx >= static_cast<int>(arena.moves[v].size())) return false;
      if (!edge_ok(v, arena.moves[v][idx].second)) return false;
    } else {
      for (auto [label, w] : arena.moves[v]) {
        if (!edge_ok(v, w)) return false;
      }
    }
  }
  return true;
}

}  // namespace gamefold
