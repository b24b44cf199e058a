#include "gamefold/progress.hpp"

#include <algorithm>

namespace gamefold {

LexOrder compare_lex(const std::vector<unsigned>& x, const std::vector<unsigned>& y, int k) {
  if (x.size() != y.size()) {
    throw Error(Error::Code::Precondition, "measure tuples differ in length");
  }
  if (k < 0 || k >= static_cast<int>(x.size())) {
    throw Error(Error::Code::Precondition, "priority outside the tuple range");
  }
  for (int i = 0; i <= k; ++i) {
    if (x[i] != y[i]) return x[i] < y[i] ? LexOrder::Less : LexOrder::Greater;
  }
  return LexOrder::Equal;
}

std::optional<MeasureViolation> check_measure(const AnnotatedStrategy& annotated,
                                              const ParityTreeAutomaton& spec,
                                              const ProgressMeasure& measure) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  if (static_cast<int>(measure.mu.size()) != n) {
    throw Error(Error::Code::Precondition, "measure does not cover every node");
  }
  for (int u = 0; u < n; ++u) {
    if (s.is_frontier(u)) continue;
    int k = spec.priority[annotated.labels.wstate[u]];
    for (int d = 0; d < static_cast<int>(s.edge[u].size()); ++d) {
      int v = s.edge[u][d];
      LexOrder ord = compare_lex(measure.mu[u], measure.mu[v], k);
      bool ok = k % 2 == 0 ? ord != LexOrder::Less : ord == LexOrder::Greater;
      if (!ok) return MeasureViolation{u, d};
    }
  }
  return std::nullopt;
}

std::optional<ProgressMeasure> compute_measure(const AnnotatedStrategy& annotated,
                                               const ParityTreeAutomaton& spec) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  int r = std::max(spec.priority_count, 1);
  auto node_priority = [&](int v) { return spec.priority[annotated.labels.wstate[v]]; };

  ProgressMeasure measure;
  measure.priorities = r;
  measure.mu.assign(n, std::vector<unsigned>(r, 0));

  // Per odd priority k, on the subgraph of nodes with priority >= k, the
  // component mu_k(v) is the largest number of priority-k nodes on any path
  // from v (counting v itself). The value is finite exactly when no cycle of
  // the subgraph passes through a priority-k node; divergence is detected by
  // exceeding the count of priority-k nodes.
  for (int k = 1; k < r; k += 2) {
    std::vector<char> keep(n, 0);
    unsigned cap = 0;
    for (int v = 0; v < n; ++v) {
      if (node_priority(v) >= k) {
        keep[v] = 1;
        if (node_priority(v) == k) cap++;
      }
    }
    std::vector<unsigned> value(n, 0);
    for (int v = 0; v < n; ++v) {
      if (keep[v] && node_priority(v) == k) value[v] = 1;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!keep[v] || s.is_frontier(v)) continue;
        unsigned best = 0;
        for (int w : s.edge[v]) {
          if (keep[w]) best = std::max(best, value[w]);
        }
        unsigned candidate = best + (node_priority(v) == k ? 1 : 0);
        if (candidate > value[v]) {
          if (candidate > cap) return std::nullopt;
          value[v] = candidate;
          changed = true;
        }
      }
    }
    for (int v = 0; v < n; ++v) measure.mu[v][k] = value[v];
  }
  return measure;
}

}  // namespace gamefold
