// Annotated strategies: node labels carrying the Mealy-state profile and a
// specification state, local annotation checking, the finite-graph
// acceptance test, and constructive witness search via a parity game.
#pragma once

#include <optional>

#include "gamefold/strategy.hpp"

namespace gamefold {

struct Annotation {
  std::vector<std::vector<int>> mealy;  // [node][player]
  std::vector<int> wstate;              // [node]
};

struct AnnotatedStrategy {
  DecisionStructure structure;
  Annotation labels;

  int node_count() const { return structure.node_count(); }
};

struct AnnotationViolation {
  enum class Kind { InitialLabel, MealyStep, RunStep, UndeclaredState };
  Kind kind;
  int node = 0;
  int dir = -1;
  int player = -1;
  std::string detail;
};

/// First violated local condition: the initial label, a Mealy step along an
/// edge, or Delta-membership of a node's transition tuple. Edges out of
/// frontier nodes are exempt.
std::optional<AnnotationViolation> check_annotation(const AnnotatedStrategy& annotated,
                                                    const GameSpec& game,
                                                    const ParityTreeAutomaton& spec);

struct Lasso {
  std::vector<int> stem;   // from the initial node to the cycle entry
  std::vector<int> cycle;  // cycle node sequence, first node repeated at end
};

struct WitnessResult {
  bool accepting = false;
  std::optional<Lasso> counterexample;
};

/// Acceptance on the finite graph: no reachable cycle whose minimum priority
/// is odd. On rejection the result carries a reachable odd lasso.
WitnessResult is_witness(const AnnotatedStrategy& annotated, const ParityTreeAutomaton& spec);

/// Searches for a witnessing annotation of the structure's outcome. The
/// result, when present, is a refined structure (a synchronized product with
/// the observers and a positional choice of Delta-transitions) whose
/// unravelling equals the input's.
std::optional<AnnotatedStrategy> find_witness_annotation(const DecisionStructure& s,
                                                         const GameSpec& game,
                                                         const ParityTreeAutomaton& spec);

/// Witness annotation pushed onto the truncated unravelling.
/// Throws Error::NoWitness when no witnessing annotation exists.
AnnotatedStrategy annotate_tree(const DecisionStructure& s, const GameSpec& game,
                                const ParityTreeAutomaton& spec, int depth);

/// Expands a structure with the deterministic observer runs and a given run
/// of the specification; used by tests and the certificate reader.
AnnotatedStrategy attach_labels(const DecisionStructure& s, std::vector<std::vector<int>> mealy,
                                std::vector<int> wstate);

}  // namespace gamefold
