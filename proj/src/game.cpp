#include "gamefold/game.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gamefold {

int GameSpec::profile_count() const {
  int n = 1;
  for (const auto& alphabet : actions) n *= static_cast<int>(alphabet.size());
  return n;
}

int GameSpec::profile_index(const std::vector<int>& per_player) const {
  int idx = 0;
  for (int i = 0; i < players; ++i) {
    idx = idx * static_cast<int>(actions[i].size()) + per_player[i];
  }
  return idx;
}

std::vector<int> GameSpec::decode_profile(int profile) const {
  std::vector<int> out(players, 0);
  for (int i = players - 1; i >= 0; --i) {
    int sz = static_cast<int>(actions[i].size());
    out[i] = profile % sz;
    profile /= sz;
  }
  return out;
}

int GameSpec::profile_component(int profile, int player) const {
  for (int i = players - 1; i > player; --i) {
    profile /= static_cast<int>(actions[i].size());
  }
  return profile % static_cast<int>(actions[player].size());
}

std::string GameSpec::profile_name(int profile) const {
  auto parts = decode_profile(profile);
  std::string out;
  if (players == 1) return actions[0][parts[0]];
  out = "(";
  for (int i = 0; i < players; ++i) {
    if (i) out += ",";
    out += actions[i][parts[i]];
  }
  out += ")";
  return out;
}

std::string GameSpec::move_name(const Move& m) const {
  return profile_name(m.profile) + "," + directions[m.dir];
}

MealyRun run_mealy(const GameSpec& game, int player, const History& history) {
  if (player < 0 || player >= game.players) {
    throw Error(Error::Code::Validation, "no such player: " + std::to_string(player));
  }
  const MealyMachine& m = game.observers[player];
  MealyRun run;
  run.states.reserve(history.size() + 1);
  run.outputs.reserve(history.size());
  int state = m.initial;
  run.states.push_back(state);
  for (size_t k = 0; k < history.size(); ++k) {
    const Move& mv = history[k];
    if (mv.profile < 0 || mv.profile >= game.profile_count() || mv.dir < 0 ||
        mv.dir >= game.direction_count()) {
      throw Error(Error::Code::Validation,
                  "malformed move at index " + std::to_string(k));
    }
    int g = game.move_index(mv);
    int out = m.output[state][g];
    int nxt = m.next[state][g];
    if (out < 0 || nxt < 0) {
      throw Error(Error::Code::Validation,
                  "observer " + std::to_string(player) + " has no entry for state " +
                      m.states[state] + " on move " + game.move_name(mv));
    }
    run.outputs.push_back(out);
    state = nxt;
    run.states.push_back(state);
  }
  return run;
}

bool indistinguishable(const GameSpec& game, int player, const History& a, const History& b) {
  if (a.size() != b.size()) return false;
  MealyRun ra = run_mealy(game, player, a);
  MealyRun rb = run_mealy(game, player, b);
  return ra.outputs == rb.outputs;
}

std::vector<Diagnostic> validate_game(const GameSpec& game) {
  std::vector<Diagnostic> diags;
  auto add = [&](const std::string& code, const std::string& msg) {
    diags.push_back({code, msg});
  };
  if (game.players < 1) add("PlayerCount", "at least one player required");
  if (static_cast<int>(game.actions.size()) != game.players) {
    add("ActionListCount", "expected one action alphabet per player");
  }
  for (size_t i = 0; i < game.actions.size(); ++i) {
    if (game.actions[i].empty()) {
      add("EmptyActionAlphabet", "player " + std::to_string(i) + " has no actions");
    }
  }
  if (game.directions.empty()) add("EmptyDirections", "direction set is empty");
  if (static_cast<int>(game.observers.size()) != game.players) {
    add("ObserverCountMismatch",
        "expected " + std::to_string(game.players) + " observers, found " +
            std::to_string(game.observers.size()));
    return diags;
  }
  if (!diags.empty()) return diags;

  int moves = game.move_count();
  for (int i = 0; i < game.players; ++i) {
    const MealyMachine& m = game.observers[i];
    if (m.states.empty()) {
      add("EmptyObserver", "observer " + std::to_string(i) + " has no states");
      continue;
    }
    if (m.initial < 0 || m.initial >= m.state_count()) {
      add("BadInitialState", "observer " + std::to_string(i) + " initial state out of range");
    }
    if (static_cast<int>(m.next.size()) != m.state_count() ||
        static_cast<int>(m.output.size()) != m.state_count()) {
      add("IncompleteTransition", "observer " + std::to_string(i) + " tables malformed");
      continue;
    }
    for (int q = 0; q < m.state_count(); ++q) {
      if (static_cast<int>(m.next[q].size()) != moves ||
          static_cast<int>(m.output[q].size()) != moves) {
        add("IncompleteTransition",
            "observer " + std::to_string(i) + " state " + m.states[q] + " tables malformed");
        continue;
      }
      for (int g = 0; g < moves; ++g) {
        Move mv{g / game.direction_count(), g % game.direction_count()};
        if (m.next[q][g] < 0 || m.next[q][g] >= m.state_count()) {
          add("IncompleteTransition", "observer " + std::to_string(i) + ": state " +
                                          m.states[q] + ", move " + game.move_name(mv));
        } else if (m.output[q][g] < 0 ||
                   m.output[q][g] >= static_cast<int>(m.observations.size())) {
          add("IncompleteOutput", "observer " + std::to_string(i) + ": state " + m.states[q] +
                                      ", move " + game.move_name(mv));
        }
      }
    }
  }
  return diags;
}

std::vector<Diagnostic> validate_automaton(const ParityTreeAutomaton& aut, const GameSpec& game) {
  std::vector<Diagnostic> diags;
  auto add = [&](const std::string& code, const std::string& msg) {
    diags.push_back({code, msg});
  };
  if (aut.states.empty()) {
    add("EmptySpec", "specification automaton has no states");
    return diags;
  }
  if (aut.initial < 0 || aut.initial >= aut.state_count()) {
    add("BadInitialState", "specification initial state out of range");
  }
  if (static_cast<int>(aut.priority.size()) != aut.state_count()) {
    add("MissingPriority", "every specification state needs a priority");
  } else {
    for (int q = 0; q < aut.state_count(); ++q) {
      if (aut.priority[q] < 0) add("MissingPriority", "state " + aut.states[q]);
    }
  }
  if (static_cast<int>(aut.transitions.size()) != aut.state_count()) {
    add("MalformedTransitions", "transition table size mismatch");
    return diags;
  }
  int profiles = game.profile_count();
  int dirs = game.direction_count();
  for (int q = 0; q < aut.state_count(); ++q) {
    if (static_cast<int>(aut.transitions[q].size()) != profiles) {
      add("MalformedTransitions", "state " + aut.states[q]);
      continue;
    }
    for (int a = 0; a < profiles; ++a) {
      for (const auto& tuple : aut.transitions[q][a]) {
        if (static_cast<int>(tuple.size()) != dirs) {
          add("MalformedTuple", "state " + aut.states[q] + ", profile " + game.profile_name(a));
          continue;
        }
        for (int d = 0; d < dirs; ++d) {
          if (tuple[d] < 0 || tuple[d] >= aut.state_count()) {
            add("UnknownState", "transition from " + aut.states[q] + " on " +
                                    game.profile_name(a) + " references an undeclared state");
          }
        }
      }
    }
  }
  return diags;
}

void renormalize_priorities(ParityTreeAutomaton& aut) {
  std::vector<int> used = aut.priority;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  if (used.empty()) {
    aut.priority_count = 0;
    return;
  }
  std::map<int, int> remap;
  int current = used[0] % 2;
  remap[used[0]] = current;
  for (size_t i = 1; i < used.size(); ++i) {
    if ((used[i] - used[i - 1]) % 2 != 0) current += 1;
    remap[used[i]] = current;
  }
  for (int& p : aut.priority) p = remap[p];
  aut.priority_count = current + 1;
}

void require_valid(const GameSpec& game) {
  auto diags = validate_game(game);
  if (!diags.empty()) {
    throw Error(Error::Code::Validation, diags.front().code + ": " + diags.front().message);
  }
}

void require_valid(const ParityTreeAutomaton& aut, const GameSpec& game) {
  auto diags = validate_automaton(aut, game);
  if (!diags.empty()) {
    throw Error(Error::Code::Validation, diags.front().code + ": " + diags.front().message);
  }
}

namespace {

std::vector<std::string> split_moves(const std::string& text) {
  // History syntax: (a,l)(b,r) or for one player a,l;b,r
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') {
      if (depth == 0 && !cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      depth++;
      cur += c;
    } else if (c == ')') {
      depth--;
      cur += c;
      if (depth == 0) {
        out.push_back(cur);
        cur.clear();
      }
    } else if ((c == ';' || std::isspace(static_cast<unsigned char>(c))) && depth == 0) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

int find_name(const std::vector<std::string>& names, const std::string& s) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == s) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

History parse_history(const GameSpec& game, const std::string& text) {
  History h;
  for (const std::string& token : split_moves(text)) {
    std::string body = token;
    if (!body.empty() && body.front() == '(' && body.back() == ')') {
      body = body.substr(1, body.size() - 2);
    }
    auto parts = split_commas(body);
    if (static_cast<int>(parts.size()) != game.players + 1) {
      throw Error(Error::Code::Parse, "move " + token + " needs " +
                                          std::to_string(game.players) +
                                          " actions and a direction");
    }
    std::vector<int> acts(game.players);
    for (int i = 0; i < game.players; ++i) {
      acts[i] = find_name(game.actions[i], parts[i]);
      if (acts[i] < 0) {
        throw Error(Error::Code::Parse, "unknown action " + parts[i] + " for player " +
                                            std::to_string(i));
      }
    }
    int dir = find_name(game.directions, parts.back());
    if (dir < 0) throw Error(Error::Code::Parse, "unknown direction " + parts.back());
    h.push_back({game.profile_index(acts), dir});
  }
  return h;
}

std::string format_history(const GameSpec& game, const History& history) {
  std::string out;
  for (const Move& m : history) {
    out += "(";
    auto parts = game.decode_profile(m.profile);
    for (int i = 0; i < game.players; ++i) {
      out += game.actions[i][parts[i]];
      out += ",";
    }
    out += game.directions[m.dir];
    out += ")";
  }
  return out;
}

}  // namespace gamefold
