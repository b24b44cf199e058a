// Two-player parity game arena and a small-progress-measures solver.
// Protagonist is owner 0 and wins a play when the minimum priority seen
// infinitely often is even.
#pragma once

#include <string>
#include <vector>

namespace gamefold {

struct ParityArena {
  struct Position {
    int owner = 0;
    int priority = 0;
    std::string name;
  };
  std::vector<Position> positions;
  // Per position: (label, target). Labels are caller-defined move tags used
  // when a strategy is read back.
  std::vector<std::vector<std::pair<int, int>>> moves;
  int initial = 0;

  int position_count() const { return static_cast<int>(positions.size()); }

  /// Gives every move-less position a self-loop losing for its owner.
  void totalize();
};

struct ArenaSolution {
  std::vector<char> protagonist_wins;
  // Chosen move index per protagonist position inside its winning region,
  // -1 elsewhere.
  std::vector<int> strategy;
  // The progress-measure certificate: one tuple per position; top[v] marks
  // positions where no finite measure exists (protagonist loses).
  std::vector<std::vector<unsigned>> measure;
  std::vector<char> top;
  int priority_count = 0;

  bool initial_won(const ParityArena& arena) const {
    return protagonist_wins[arena.initial] != 0;
  }
};

ArenaSolution solve_parity(const ParityArena& arena);

/// Re-checks the certificate returned by solve_parity: at protagonist
/// positions the chosen move satisfies the lexicographic progress condition,
/// at antagonist positions every move does. Returns true when consistent.
bool check_arena_certificate(const ParityArena& arena, const ArenaSolution& solution);

}  // namespace gamefold
