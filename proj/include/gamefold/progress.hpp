// Parity progress measures on annotated strategies: lexicographic prefix
// orders, certificate checking, and measure computation on finite
// structures.
#pragma once

#include <optional>

#include "gamefold/annotation.hpp"

namespace gamefold {

struct ProgressMeasure {
  int priorities = 0;                     // tuple length r
  std::vector<std::vector<unsigned>> mu;  // one tuple per node
};

enum class LexOrder { Less, Equal, Greater };

/// Lexicographic comparison of the length-(k+1) prefixes.
LexOrder compare_lex(const std::vector<unsigned>& x, const std::vector<unsigned>& y, int k);

struct MeasureViolation {
  int node = 0;
  int dir = 0;
};

/// First edge (in node/direction order) violating the progress condition at
/// the source's priority: non-strict for even, strict for odd. Frontier
/// edges are exempt.
std::optional<MeasureViolation> check_measure(const AnnotatedStrategy& annotated,
                                              const ParityTreeAutomaton& spec,
                                              const ProgressMeasure& measure);

/// Least progress measure when one exists; empty exactly when some reachable
/// cycle has odd minimum priority. Components at even indices are zero and
/// every component is bounded by the node count.
std::optional<ProgressMeasure> compute_measure(const AnnotatedStrategy& annotated,
                                               const ParityTreeAutomaton& spec);

}  // namespace gamefold
