// Decision procedures: the one-player knowledge construction for observable
// conditions, the bounded-delay coordination solver, a perfect-information
// product game, and the strategy-enumeration oracle that anchors the
// randomized cross-checks.
#pragma once

#include <optional>

#include "gamefold/annotation.hpp"
#include "gamefold/arena.hpp"
#include "gamefold/progress.hpp"

namespace gamefold {

struct Certificate {
  AnnotatedStrategy annotated;
  ProgressMeasure measure;
};

enum class SolveStatus { Winning, Losing, Unknown };

struct SolveResult {
  SolveStatus status = SolveStatus::Losing;
  std::optional<DecisionStructure> strategy;
  std::optional<Certificate> certificate;
  // For Unknown answers: the memory bound that was exhausted.
  int exhausted_bound = 0;
};

/// Perfect-information parity game of the specification against Nature:
/// protagonist picks an action profile and a transition tuple, Nature picks
/// the direction. Ignores the observers.
ParityArena build_product_arena(const GameSpec& game, const ParityTreeAutomaton& spec);

enum class OnePlayerMode { Observable, General };

struct OnePlayerOptions {
  OnePlayerMode mode = OnePlayerMode::Observable;
  // General mode: largest structure size tried before answering Unknown.
  int max_memory = 6;
  long long enumeration_budget = 2'000'000;
};

/// One-player solver. Observable mode requires the specification to be
/// declared observable and deterministic per (state, action); it builds the
/// belief arena over sets of observer states paired with the tracked
/// specification state, complete for that class. General mode is a bounded
/// search with an honest Unknown.
SolveResult solve_one_player(const GameSpec& game, const ParityTreeAutomaton& spec,
                             const OnePlayerOptions& opts = {});

/// Rewrites a delay-form base game into an explicit imperfect-information
/// game: Nature's directions become (base direction, requested lag) pairs
/// and every player observes delivered moves plus their own action. The
/// specification is lifted to ignore the lag component.
struct DelayExpansion {
  GameSpec game;
  ParityTreeAutomaton spec;
  int window = 0;
};
DelayExpansion expand_delay_game(const GameSpec& base, const ParityTreeAutomaton& base_spec,
                                 int window);

/// Solver for bounded-delay coordination games (window <= 3). Builds the
/// arena whose positions track the specification state at the delivered
/// frontier plus the pending action profiles, solves it, and reads back a
/// joint finite-state strategy over the expanded game.
SolveResult solve_delay(const GameSpec& base, const ParityTreeAutomaton& base_spec, int window);

struct OracleOptions {
  int memory_bound = 3;
  long long budget = 2'000'000;
  // When set, candidate structures must additionally keep every d-state of
  // their witness annotation at or below this size.
  int dstate_bound = 0;
};

struct OracleOutcome {
  enum class Kind { Winner, NoneWithinBound, BudgetExceeded } kind;
  std::optional<DecisionStructure> strategy;
  std::optional<Certificate> certificate;
  long long candidates_tried = 0;
  long long candidates_required = 0;  // set when the budget was exceeded
};

/// Enumerates decision structures up to the memory bound in canonical order
/// (one representative per isomorphism class), filters by uniformity and
/// returns the first winner.
OracleOutcome brute_force_oracle(const GameSpec& game, const ParityTreeAutomaton& spec,
                                 const OracleOptions& opts = {});

struct GrowthRow {
  int depth = 0;
  long long histories = 0;
  long long dstates = 0;
  long long max_size = 0;
  long long class_index = -1;  // only computed in strategy mode
};

struct GrowthOptions {
  long long history_budget = 2'000'000;
  // When a strategy is given the table follows it; otherwise all histories
  // are explored and classes are counted without isomorphism reduction.
  const DecisionStructure* strategy = nullptr;
};

std::vector<GrowthRow> diagnose_growth(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       int depth, const GrowthOptions& opts = {});

/// Builds the full certificate (witness annotation plus measure) for a
/// winning structure; empty when the structure does not win.
std::optional<Certificate> certify(const DecisionStructure& s, const GameSpec& game,
                                   const ParityTreeAutomaton& spec);

}  // namespace gamefold
