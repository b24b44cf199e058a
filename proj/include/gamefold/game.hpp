// Core model for synchronous distributed games: action alphabets, Nature
// directions, Mealy observation machines, histories, and parity tree
// automaton specifications.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamefold {

class Error : public std::runtime_error {
public:
  enum class Code {
    Parse,
    Validation,
    NonUniform,
    NoWitness,
    NotOnePlayer,
    NotDelayForm,
    DelayOutOfRange,
    NotObservable,
    BudgetExceeded,
    Precondition,
    Io,
    Internal,
  };

  Error(Code code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Code code() const { return code_; }

private:
  Code code_;
};

/// Deterministic transducer producing one player's observation stream.
/// Transition and output tables are dense, indexed [state][move].
struct MealyMachine {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<std::string> observations;
  std::vector<std::vector<int>> next;    // -1 marks a missing entry
  std::vector<std::vector<int>> output;  // -1 marks a missing entry

  int state_count() const { return static_cast<int>(states.size()); }
};

struct Move {
  int profile = 0;
  int dir = 0;
  bool operator==(const Move&) const = default;
};

using History = std::vector<Move>;

/// Game instance: team size, per-player action alphabets, directions and
/// one observation machine per player. Action profiles and moves are
/// enumerated in a fixed lexicographic order so every downstream
/// construction is deterministic.
struct GameSpec {
  int players = 0;
  std::vector<std::vector<std::string>> actions;
  std::vector<std::string> directions;
  std::vector<MealyMachine> observers;

  int direction_count() const { return static_cast<int>(directions.size()); }
  int profile_count() const;
  int move_count() const { return profile_count() * direction_count(); }
  int move_index(int profile, int dir) const { return profile * direction_count() + dir; }
  int move_index(const Move& m) const { return move_index(m.profile, m.dir); }

  // Profiles are ordered lexicographically by (a^0, ..., a^{n-1}).
  int profile_index(const std::vector<int>& per_player) const;
  std::vector<int> decode_profile(int profile) const;
  int profile_component(int profile, int player) const;

  std::string profile_name(int profile) const;
  std::string move_name(const Move& m) const;
};

/// Nondeterministic parity tree automaton over the game's action profiles,
/// branching by direction. transitions[q][profile] lists the admissible
/// direction-indexed successor tuples.
struct ParityTreeAutomaton {
  std::vector<std::string> states;
  int initial = 0;
  std::vector<int> priority;
  int priority_count = 0;
  std::vector<std::vector<std::vector<std::vector<int>>>> transitions;
  bool observable = false;

  int state_count() const { return static_cast<int>(states.size()); }
  const std::vector<std::vector<int>>& tuples(int state, int profile) const {
    return transitions[state][profile];
  }
};

struct MealyRun {
  std::vector<int> states;   // one longer than the history
  std::vector<int> outputs;  // one per move
};

/// Run of one observer over a history; validates every move index and names
/// the offending position on failure.
MealyRun run_mealy(const GameSpec& game, int player, const History& history);

/// True iff the two histories produce identical observation sequences for
/// the given player. Histories of different lengths are never related.
bool indistinguishable(const GameSpec& game, int player, const History& a, const History& b);

struct Diagnostic {
  std::string code;
  std::string message;
};

std::vector<Diagnostic> validate_game(const GameSpec& game);
std::vector<Diagnostic> validate_automaton(const ParityTreeAutomaton& aut, const GameSpec& game);

/// Maps priorities onto a contiguous 0-based range, preserving parity and
/// relative order; adjacent same-parity values collapse.
void renormalize_priorities(ParityTreeAutomaton& aut);

/// Throws Error::Validation when diagnostics are non-empty.
void require_valid(const GameSpec& game);
void require_valid(const ParityTreeAutomaton& aut, const GameSpec& game);

History parse_history(const GameSpec& game, const std::string& text);
std::string format_history(const GameSpec& game, const History& history);

}  // namespace gamefold
