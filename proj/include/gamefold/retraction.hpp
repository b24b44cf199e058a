// Retraction maps on strategy nodes: image construction, validity and
// monotonicity checking, conservative application, composition, and the
// compaction of isomorphism classes of d-states.
#pragma once

#include <optional>

#include "gamefold/dstates.hpp"
#include "gamefold/progress.hpp"

namespace gamefold {

/// Total map on the nodes of a structure. target[v] names the node whose
/// decision v adopts.
struct RetractionMap {
  std::vector<int> target;

  int size() const { return static_cast<int>(target.size()); }
  bool is_identity() const;
};

RetractionMap identity_map(int nodes);

/// The image h(S): same ambient nodes, edges redirected through h, restricted
/// to what stays reachable. origin, when given, maps image node ids back to
/// the input's node ids.
DecisionStructure image(const DecisionStructure& s, const RetractionMap& h,
                        std::vector<int>* origin = nullptr);

struct RetractionViolation {
  enum class Kind { MapRange, LabelMismatch, FrontierMismatch, ImageNonUniform, ImageAnnotation };
  Kind kind;
  int node = -1;
  std::string detail;
};

/// Both retraction conditions: labels preserved along h (frontier may only
/// be dropped, never introduced) and the image uniform. On success the image
/// is re-verified as an annotated strategy.
std::optional<RetractionViolation> check_retraction(const AnnotatedStrategy& annotated,
                                                    const GameSpec& game,
                                                    const ParityTreeAutomaton& spec,
                                                    const RetractionMap& h);

/// Node violating mu(v) >=_k mu(h(v)) at k = its priority, if any.
std::optional<int> check_monotone(const AnnotatedStrategy& annotated,
                                  const ParityTreeAutomaton& spec,
                                  const ProgressMeasure& measure, const RetractionMap& h);

struct RetractResult {
  AnnotatedStrategy annotated;
  ProgressMeasure measure;
  std::vector<int> origin;  // image node -> input node
};

/// Applies a checked retraction; labels and measure restrict to the image.
/// The measure is re-verified on the result. Throws Error::Precondition when
/// either check fails.
RetractResult retract(const AnnotatedStrategy& annotated, const GameSpec& game,
                      const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                      const RetractionMap& h);

/// Composite of a retraction g on the input with a retraction h on g's
/// retract (h is given in retract node ids; origin translates them). The
/// composite is verified against both checks on the input.
RetractionMap compose(const RetractionMap& g, const RetractionMap& h_on_retract,
                      const std::vector<int>& retract_origin, const AnnotatedStrategy& annotated,
                      const GameSpec& game, const ParityTreeAutomaton& spec,
                      const ProgressMeasure& measure);

/// Folds the isomorphism class of the given d-state onto its pointwise
/// measure-minimal members; nodes outside the class stay fixed. Members
/// whose measures tie at some node are incomparable and stay put, unless
/// merge_equal is set, in which case members with fully identical measures
/// share one representative.
RetractionMap compact_class(const AnnotatedStrategy& annotated, const ProgressMeasure& measure,
                            const std::vector<DState>& dstates, const ClassReport& classes,
                            int class_index, const IsomorphismOptions& opts = {},
                            bool merge_equal = false);

/// Depth-preserving fold inside one d-state: nodes sharing a label (and
/// frontier status) map onto the measure-least of their group. Nodes outside
/// the d-state stay fixed.
RetractionMap horizontal_fold(const AnnotatedStrategy& annotated, const ProgressMeasure& measure,
                              const DState& dstate);

struct CompactStats {
  int rounds = 0;
  int folds = 0;
  int nodes_before = 0;
  int nodes_after = 0;
  int classes_before = 0;
  int classes_after = 0;
};

struct CompactResult {
  AnnotatedStrategy annotated;
  ProgressMeasure measure;
  CompactStats stats;
};

/// Iterates class compaction and a behavioural condensation until no class
/// shrinks further. The result is re-verified: still an annotated strategy,
/// measure intact, d-state classes a subset of the input's.
CompactResult compact_all(const AnnotatedStrategy& annotated, const GameSpec& game,
                          const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                          const IsomorphismOptions& opts = {});

/// Merges nodes with identical behaviour bookkeeping (same redirect target,
/// equal measure, same frontier flag) after a retraction; used by
/// compact_all to present small retracts.
RetractResult condense(const AnnotatedStrategy& annotated, const GameSpec& game,
                       const ParityTreeAutomaton& spec, const ProgressMeasure& measure,
                       const RetractionMap& h);

}  // namespace gamefold
