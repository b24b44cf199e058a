#include "gamefold/retraction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace gamefold {

bool RetractionMap::is_identity() const {
  for (int v = 0; v < size(); ++v) {
    if (target[v] != v) return false;
  }
  return true;
}

RetractionMap identity_map(int nodes) {
  RetractionMap h;
  h.target.resize(nodes);
  std::iota(h.target.begin(), h.target.end(), 0);
  return h;
}

DecisionStructure image(const DecisionStructure& s, const RetractionMap& h,
                        std::vector<int>* origin) {
  if (h.size() != s.node_count()) {
    throw Error(Error::Code::Precondition, "retraction map must be total on the nodes");
  }
  int dirs = s.edge.empty() ? 0 : static_cast<int>(s.edge[0].size());
  // Nodes keep their identity; decisions are read through h. Frontier status
  // transports like the choice function.
  DecisionStructure redirected;
  redirected.nodes = s.nodes;
  redirected.initial = h.target[s.initial];
  redirected.choice.resize(s.node_count());
  redirected.edge.assign(s.node_count(), std::vector<int>(dirs, 0));
  redirected.frontier.resize(s.node_count());
  for (int v = 0; v < s.node_count(); ++v) {
    int t = h.target[v];
    if (t < 0 || t >= s.node_count()) {
      throw Error(Error::Code::Precondition, "retraction map leaves the node set");
    }
    redirected.choice[v] = s.choice[t];
    redirected.frontier[v] = s.is_frontier(t) ? 1 : 0;
    if (redirected.frontier[v]) {
      for (int d = 0; d < dirs; ++d) redirected.edge[v][d] = v;
    } else {
      for (int d = 0; d < dirs; ++d) redirected.edge[v][d] = s.edge[t][d];
    }
  }
  std::vector<int> remap;
  DecisionStructure pruned = prune_reachable(redirected, &remap);
  if (origin) {
    origin->assign(pruned.node_count(), -1);
    for (int old = 0; old < s.node_count(); ++old) {
      if (remap[old] >= 0) (*origin)[remap[old]] = old;
    }
  }
  return pruned;
}

namespace {

AnnotatedStrategy restrict_annotation(const AnnotatedStrategy& annotated,
                                      const DecisionStructure& img,
                                      const std::vector<int>& origin) {
  AnnotatedStrategy out;
  out.structure = img;
  out.labels.mealy.reserve(origin.size());
  out.labels.wstate.reserve(origin.size());
  for (int old : origin) {
    out.labels.mealy.push_back(annotated.labels.mealy[old]);
    out.labels.wstate.push_back(annotated.labels.wstate[old]);
  }
  return out;
}

ProgressMeasure restrict_measure(const ProgressMeasure& measure, const std::vector<int>& origin) {
  ProgressMeasure out;
  out.priorities = measure.priorities;
  out.mu.reserve(origin.size());
  for (int old : origin) out.mu.push_back(measure.mu[old]);
  return out;
}

}  // namespace

std::optional<RetractionViolation> check_retraction(const AnnotatedStrategy& annotated,
                                                    const GameSpec& game,
                                                    const ParityTreeAutomaton& spec,
                                                    const RetractionMap& h) {
  const DecisionStructure& s = annotated.structure;
  if (h.size() != s.node_count()) {
    return RetractionViolation{RetractionViolation::Kind::MapRange, -1,
                               "map must be total on the nodes"};
  }
  for (int v = 0; v < s.node_count(); ++v) {
    int t = h.target[v];
    if (t < 0 || t >= s.node_count()) {
      return RetractionViolation{RetractionViolation::Kind::MapRange, v, "target out of range"};
    }
    if (annotated.labels.wstate[v] != annotated.labels.wstate[t] ||
        annotated.labels.mealy[v] != annotated.labels.mealy[t]) {
      return RetractionViolation{RetractionViolation::Kind::LabelMismatch, v,
                                 "node and its target carry different labels"};
    }
    // A fold may drop the frontier mark (the target supplies real behaviour)
    // but must not introduce one.
    if (s.is_frontier(t) && !s.is_frontier(v)) {
      return RetractionViolation{RetractionViolation::Kind::FrontierMismatch, v,
                                 "an interior node may not adopt a frontier decision"};
    }
  }
  std::vector<int> origin;
  DecisionStructure img = image(s, h, &origin);
  if (auto violation = check_strategy(img, game)) {
    return RetractionViolation{RetractionViolation::Kind::ImageNonUniform, violation->u,
                               "image breaks uniformity for player " +
                                   std::to_string(violation->player) + " at " +
                                   img.nodes[violation->u] + " / " + img.nodes[violation->v]};
  }
  // The retract of an annotated strategy is again an annotated strategy;
  // verify rather than assume.
  AnnotatedStrategy retracted = restrict_annotation(annotated, img, origin);
  if (auto violation = check_annotation(retracted, game, spec)) {
    return RetractionViolation{RetractionViolation::Kind::ImageAnnotation, violation->node,
                               "image annotation check failed: " + violation->detail};
  }
  return std::nullopt;
}

std::optional<int> check_monotone(const AnnotatedStrategy& annotated,
                                  const ParityTreeAutomaton& spec,
                                  const ProgressMeasure& measure, const RetractionMap& h) {
  const DecisionStructure& s = annotated.structure;
  if (h.size() != s.node_count() || static_cast<int>(measure.mu.size()) != s.node_count()) {
    throw Error(Error::Code::Precondition, "map and measure must cover the nodes");
  }
  for (int v = 0; v < s.node_count(); ++v) {
    int k = spec.priority[annotated.labels.wstate[v]];
    if (compare_lex(measure.mu[v], measure.mu[h.target[v]], k) == LexOrder::Less) {
      return v;
    }
  }
  return std::nullopt;
}

RetractResult retract(const AnnotatedStrategy& annotated, const GameSpec& game,
                      const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                      const RetractionMap& h) {
  if (auto violation = check_retraction(annotated, game, spec, h)) {
    throw Error(Error::Code::Precondition,
                "not a retraction: " + violation->detail);
  }
  if (auto node = check_monotone(annotated, spec, measure, h)) {
    throw Error(Error::Code::Precondition,
                "retraction is not measure-monotone at node " +
                    annotated.structure.nodes[*node]);
  }
  RetractResult result;
  DecisionStructure img = image(annotated.structure, h, &result.origin);
  result.annotated = restrict_annotation(annotated, img, result.origin);
  result.measure = restrict_measure(measure, result.origin);
  if (check_measure(result.annotated, spec, result.measure)) {
    throw Error(Error::Code::Internal,
                "measure stopped being valid on the retract");
  }
  return result;
}

RetractionMap compose(const RetractionMap& g, const RetractionMap& h_on_retract,
                      const std::vector<int>& retract_origin, const AnnotatedStrategy& annotated,
                      const GameSpec& game, const ParityTreeAutomaton& spec,
                      const ProgressMeasure& measure) {
  int n = annotated.structure.node_count();
  if (g.size() != n) {
    throw Error(Error::Code::Precondition, "first map must be total on the input nodes");
  }
  // Translate h to ambient node ids, extending by the identity outside the
  // retract's node set.
  std::vector<int> h_ambient(n);
  std::iota(h_ambient.begin(), h_ambient.end(), 0);
  std::vector<int> ambient_to_retract(n, -1);
  for (size_t i = 0; i < retract_origin.size(); ++i) {
    ambient_to_retract[retract_origin[i]] = static_cast<int>(i);
  }
  for (size_t i = 0; i < retract_origin.size(); ++i) {
    h_ambient[retract_origin[i]] = retract_origin[h_on_retract.target[i]];
  }
  RetractionMap composite;
  composite.target.resize(n);
  for (int v = 0; v < n; ++v) composite.target[v] = g.target[h_ambient[v]];
  if (auto violation = check_retraction(annotated, game, spec, composite)) {
    throw Error(Error::Code::Precondition,
                "composite fails the retraction conditions: " + violation->detail);
  }
  if (auto node = check_monotone(annotated, spec, measure, composite)) {
    throw Error(Error::Code::Precondition,
                "composite is not measure-monotone at node " +
                    annotated.structure.nodes[*node]);
  }
  return composite;
}

RetractionMap compact_class(const AnnotatedStrategy& annotated, const ProgressMeasure& measure,
                            const std::vector<DState>& dstates, const ClassReport& classes,
                            int class_index, const IsomorphismOptions& opts, bool merge_equal) {
  if (class_index < 0 || class_index >= classes.index()) {
    throw Error(Error::Code::Precondition, "no such class");
  }
  const std::vector<int>& members = classes.classes[class_index];
  int n = annotated.structure.node_count();
  RetractionMap h = identity_map(n);
  if (members.size() <= 1) return h;

  const DState& base = dstates[members.front()];
  // Base isomorphisms: lexicographically least map from the base member.
  std::vector<std::vector<int>> pi;  // per member: base-local -> member-ambient
  for (int m : members) {
    auto iso = isomorphic(annotated, base, dstates[m], opts);
    if (!iso) {
      throw Error(Error::Code::Internal, "class member lost its isomorphism");
    }
    std::vector<int> ambient(base.size());
    for (int i = 0; i < base.size(); ++i) ambient[i] = dstates[m].nodes[(*iso)[i]];
    pi.push_back(std::move(ambient));
  }

  // x > y when the measure is lexicographically larger at every node.
  auto strictly_above = [&](int x, int y) {
    for (int i = 0; i < base.size(); ++i) {
      const auto& mx = measure.mu[pi[x][i]];
      const auto& my = measure.mu[pi[y][i]];
      if (compare_lex(mx, my, measure.priorities - 1) != LexOrder::Greater) return false;
    }
    return true;
  };
  auto equal_measures = [&](int x, int y) {
    for (int i = 0; i < base.size(); ++i) {
      if (measure.mu[pi[x][i]] != measure.mu[pi[y][i]]) return false;
    }
    return true;
  };

  int count = static_cast<int>(members.size());
  std::vector<char> minimal(count, 1);
  for (int x = 0; x < count; ++x) {
    for (int y = 0; y < count && minimal[x]; ++y) {
      if (y != x && strictly_above(x, y)) minimal[x] = 0;
    }
  }
  for (int x = 0; x < count; ++x) {
    int chosen = -1;
    if (minimal[x]) {
      if (!merge_equal) continue;
      for (int y = 0; y < count; ++y) {
        if (minimal[y] && equal_measures(x, y)) {
          chosen = y;
          break;
        }
      }
    } else {
      for (int y = 0; y < count; ++y) {
        if (minimal[y] && strictly_above(x, y)) {
          chosen = y;
          break;
        }
      }
    }
    if (chosen < 0 || chosen == x) continue;
    for (int i = 0; i < base.size(); ++i) h.target[pi[x][i]] = pi[chosen][i];
  }
  return h;
}

RetractionMap horizontal_fold(const AnnotatedStrategy& annotated, const ProgressMeasure& measure,
                              const DState& dstate) {
  const DecisionStructure& s = annotated.structure;
  RetractionMap h = identity_map(s.node_count());
  std::map<std::tuple<std::vector<int>, int, char>, std::vector<int>> groups;
  for (int v : dstate.nodes) {
    groups[{annotated.labels.mealy[v], annotated.labels.wstate[v],
            s.is_frontier(v) ? char(1) : char(0)}]
        .push_back(v);
  }
  int r = measure.priorities;
  for (const auto& [label, members] : groups) {
    if (members.size() < 2) continue;
    int least = members.front();
    for (int v : members) {
      if (compare_lex(measure.mu[v], measure.mu[least], r - 1) == LexOrder::Less) least = v;
    }
    for (int v : members) h.target[v] = least;
  }
  return h;
}

RetractResult condense(const AnnotatedStrategy& annotated, const GameSpec& game,
                       const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                       const RetractionMap& h) {
  const DecisionStructure& s = annotated.structure;
  int n = s.node_count();
  int dirs = s.edge.empty() ? 0 : static_cast<int>(s.edge[0].size());
  // Nodes with the same decision source, measure and frontier flag behave
  // identically; keep one per group.
  std::map<std::tuple<int, std::vector<unsigned>, char>, int> groups;
  std::vector<int> rep(n);
  for (int v = 0; v < n; ++v) {
    std::tuple<int, std::vector<unsigned>, char> key{
        h.target[v], measure.mu[v], s.is_frontier(h.target[v]) ? char(1) : char(0)};
    auto [it, inserted] = groups.emplace(key, v);
    rep[v] = it->second;
  }
  DecisionStructure merged;
  merged.nodes = s.nodes;
  merged.initial = rep[h.target[s.initial]];
  merged.choice.resize(n);
  merged.edge.assign(n, std::vector<int>(dirs, 0));
  merged.frontier.resize(n);
  for (int v = 0; v < n; ++v) {
    int t = h.target[v];
    merged.choice[v] = s.choice[t];
    merged.frontier[v] = s.is_frontier(t) ? 1 : 0;
    for (int d = 0; d < dirs; ++d) {
      merged.edge[v][d] = merged.frontier[v] ? v : rep[s.edge[t][d]];
    }
  }
  std::vector<int> remap;
  DecisionStructure pruned = prune_reachable(merged, &remap);
  RetractResult result;
  result.origin.assign(pruned.node_count(), -1);
  for (int old = 0; old < n; ++old) {
    if (remap[old] >= 0) result.origin[remap[old]] = old;
  }
  result.annotated = restrict_annotation(annotated, pruned, result.origin);
  result.measure = restrict_measure(measure, result.origin);
  if (auto violation = check_annotation(result.annotated, game, spec)) {
    throw Error(Error::Code::Internal, "condensation broke the annotation: " + violation->detail);
  }
  if (check_measure(result.annotated, spec, result.measure)) {
    throw Error(Error::Code::Internal, "condensation broke the measure");
  }
  if (check_strategy(result.annotated.structure, game)) {
    throw Error(Error::Code::Internal, "condensation broke uniformity");
  }
  return result;
}

CompactResult compact_all(const AnnotatedStrategy& annotated, const GameSpec& game,
                          const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                          const IsomorphismOptions& opts) {
  CompactResult result;
  result.annotated = annotated;
  result.measure = measure;
  result.stats.nodes_before = annotated.node_count();

  auto snapshot_dstates = [&](const AnnotatedStrategy& a) {
    UniformityRelation uni = compute_uniformity(a.structure, game);
    return compute_dstates(a, game, uni);
  };
  std::vector<DState> initial_dstates = snapshot_dstates(annotated);
  ClassReport initial_classes = classify(annotated, game, initial_dstates, opts);
  result.stats.classes_before = initial_classes.index();

  // Alternates depth-preserving folds inside d-states with measure-minimal
  // folds across isomorphism classes; every candidate is validated and
  // applied only when it introduces no new d-state shape.
  // The no-new-shapes guard compares labels and uniformity only: folding an
  // acyclic structure into a cyclic one rewrites internal edges by design.
  IsomorphismOptions guard_opts = opts;
  guard_opts.ignore_internal_edges = true;
  auto try_apply = [&](const RetractionMap& h, const std::vector<DState>& dstates) {
    if (h.is_identity()) return false;
    if (check_retraction(result.annotated, game, spec, h)) return false;
    if (check_monotone(result.annotated, spec, result.measure, h)) return false;
    RetractResult step = condense(result.annotated, game, spec, result.measure, h);
    std::vector<DState> after = snapshot_dstates(step.annotated);
    if (!classes_subset(result.annotated, dstates, step.annotated, after, guard_opts)) {
      return false;
    }
    result.annotated = std::move(step.annotated);
    result.measure = std::move(step.measure);
    result.stats.folds++;
    return true;
  };

  bool changed = true;
  int guard = annotated.node_count() + 1;
  while (changed && guard-- > 0) {
    changed = false;
    std::vector<DState> dstates = snapshot_dstates(result.annotated);
    for (const DState& d : dstates) {
      if (try_apply(horizontal_fold(result.annotated, result.measure, d), dstates)) {
        changed = true;
        break;
      }
    }
    if (!changed) {
      ClassReport classes = classify(result.annotated, game, dstates, opts);
      for (int c = 0; c < classes.index(); ++c) {
        RetractionMap h =
            compact_class(result.annotated, result.measure, dstates, classes, c, opts, true);
        if (try_apply(h, dstates)) {
          changed = true;
          break;
        }
      }
    }
    result.stats.rounds++;
  }
  result.stats.nodes_after = result.annotated.node_count();
  std::vector<DState> final_dstates = snapshot_dstates(result.annotated);
  ClassReport final_classes = classify(result.annotated, game, final_dstates, opts);
  result.stats.classes_after = final_classes.index();
  if (!classes_subset(annotated, initial_dstates, result.annotated, final_dstates, guard_opts)) {
    throw Error(Error::Code::Internal, "compaction introduced a new d-state shape");
  }
  return result;
}

}  // namespace gamefold
