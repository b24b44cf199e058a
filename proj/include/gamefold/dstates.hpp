// Distributed states: maximal components of the union of the per-player
// uniformity relations, their induced structure, isomorphism testing and
// class enumeration with the three size parameters.
#pragma once

#include <optional>

#include "gamefold/annotation.hpp"

namespace gamefold {

struct DState {
  std::vector<int> nodes;  // sorted ambient node ids
  // Relations restricted to the component, in local indices.
  std::vector<std::tuple<int, int, int>> edges;          // (local u, direction, local v)
  std::vector<std::tuple<int, int, int>> uniform_pairs;  // (player, local u, local v), u <= v
  // Edges leaving the component, kept for reporting only.
  std::vector<std::tuple<int, int, int>> exits;          // (local u, direction, ambient v)

  int size() const { return static_cast<int>(nodes.size()); }
  int local_index(int ambient) const;
};

/// Partition of the reachable nodes into maximal components of the union of
/// the per-player uniformity relations, in canonical order (least member).
std::vector<DState> compute_dstates(const AnnotatedStrategy& annotated, const GameSpec& game,
                                    const UniformityRelation& uniformity);

struct IsomorphismOptions {
  // Components larger than this raise Error::BudgetExceeded instead of
  // running an unbounded search.
  int max_nodes = 64;
  // Compare only labels, frontier flags and uniformity pairs. Used by the
  // compaction pipeline's no-new-shapes guard, where folding an acyclic
  // structure into a cyclic one legitimately changes internal edges.
  bool ignore_internal_edges = false;
};

/// Bijection between the two node sets preserving labels, frontier flags,
/// directed edges and each player's uniformity pairs; local indices.
std::optional<std::vector<int>> isomorphic(const AnnotatedStrategy& annotated, const DState& a,
                                           const DState& b,
                                           const IsomorphismOptions& opts = {});

/// Same test with the two d-states living in different structures.
std::optional<std::vector<int>> cross_isomorphic(const AnnotatedStrategy& sa, const DState& a,
                                                 const AnnotatedStrategy& sb, const DState& b,
                                                 const IsomorphismOptions& opts = {});

struct ClassReport {
  std::vector<std::vector<int>> classes;  // indices into the d-state list
  int index() const { return static_cast<int>(classes.size()); }
  int max_dstate_size = 0;
  int max_class_size = 0;
};

ClassReport classify(const AnnotatedStrategy& annotated, const GameSpec& game,
                     const std::vector<DState>& dstates, const IsomorphismOptions& opts = {});

/// True when every class of `after` is isomorphic to some class of `before`
/// (no new d-state shapes appeared).
bool classes_subset(const AnnotatedStrategy& before_s, const std::vector<DState>& before,
                    const AnnotatedStrategy& after_s, const std::vector<DState>& after,
                    const IsomorphismOptions& opts = {});

}  // namespace gamefold
