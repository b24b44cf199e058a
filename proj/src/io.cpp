#include "gamefold/io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gamefold {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') depth++;
    if (c == ')' || c == ']') depth--;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw Error(Error::Code::Parse, "line " + std::to_string(line) + ": " + message);
}

int lookup(const std::vector<std::string>& names, const std::string& s, int line,
           const std::string& what) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == s) return static_cast<int>(i);
  }
  fail(line, "unknown " + what + " '" + s + "'");
}

// Parses an action profile: a bare action for one player or (a,b,...).
int parse_profile(const GameSpec& game, std::string text, int line) {
  text = trim(text);
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  auto parts = split_on(text, ',');
  if (static_cast<int>(parts.size()) != game.players) {
    fail(line, "expected " + std::to_string(game.players) + " actions in profile");
  }
  std::vector<int> acts(game.players);
  for (int i = 0; i < game.players; ++i) {
    acts[i] = lookup(game.actions[i], parts[i], line, "action");
  }
  return game.profile_index(acts);
}

struct Lines {
  std::vector<std::pair<int, std::string>> content;  // (line number, text)

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      number++;
      size_t hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      raw = trim(raw);
      if (!raw.empty()) content.push_back({number, raw});
    }
  }
};

}  // namespace

ParsedGame parse_game_text(const std::string& text) {
  Lines lines(text);
  ParsedGame out;
  GameSpec& game = out.game;

  struct RawObserver {
    int player;
    std::vector<std::pair<int, std::string>> body;
  };
  std::vector<RawObserver> observers;
  std::vector<std::pair<int, std::string>> spec_body;
  bool has_spec = false;

  size_t i = 0;
  auto collect_block = [&](std::vector<std::pair<int, std::string>>& body, int open_line) {
    // The opening line ends with '{'; copy until the matching '}'.
    while (i < lines.content.size()) {
      auto [num, text2] = lines.content[i];
      i++;
      if (text2 == "}") return;
      body.push_back({num, text2});
    }
    fail(open_line, "unterminated block");
  };

  while (i < lines.content.size()) {
    auto [num, line] = lines.content[i];
    i++;
    auto tokens = split_ws(line);
    if (tokens[0] == "players") {
      if (tokens.size() != 2) fail(num, "players takes a count");
      game.players = std::stoi(tokens[1]);
      game.actions.resize(game.players);
    } else if (tokens[0] == "actions") {
      if (tokens.size() < 3) fail(num, "actions takes a player index and names");
      int player = std::stoi(tokens[1]);
      if (player < 0 || player >= game.players) fail(num, "player index out of range");
      game.actions[player].assign(tokens.begin() + 2, tokens.end());
    } else if (tokens[0] == "directions") {
      if (tokens.size() < 2) fail(num, "directions takes names");
      game.directions.assign(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "delay") {
      if (tokens.size() != 2) fail(num, "delay takes a window");
      out.delay = std::stoi(tokens[1]);
    } else if (tokens[0] == "observer") {
      if (tokens.size() != 3 || tokens[2] != "{") fail(num, "expected: observer <i> {");
      RawObserver raw;
      raw.player = std::stoi(tokens[1]);
      collect_block(raw.body, num);
      observers.push_back(std::move(raw));
    } else if (tokens[0] == "spec") {
      if (tokens.size() != 2 || tokens[1] != "{") fail(num, "expected: spec {");
      has_spec = true;
      collect_block(spec_body, num);
    } else {
      fail(num, "unknown section '" + tokens[0] + "'");
    }
  }

  if (game.players <= 0) throw Error(Error::Code::Parse, "missing players section");
  if (game.directions.empty()) throw Error(Error::Code::Parse, "missing directions section");
  for (int p = 0; p < game.players; ++p) {
    if (game.actions[p].empty()) {
      throw Error(Error::Code::Parse,
                  "missing actions for player " + std::to_string(p));
    }
  }

  game.observers.resize(out.delay ? 0 : game.players);
  if (out.delay && !observers.empty()) {
    throw Error(Error::Code::Parse, "delay-form games generate their observers");
  }
  for (const RawObserver& raw : observers) {
    if (raw.player < 0 || raw.player >= game.players) {
      throw Error(Error::Code::Parse, "observer index out of range");
    }
    MealyMachine m;
    std::vector<std::pair<int, std::string>> transitions;
    std::map<std::string, int> obs_index;
    for (const auto& [num, line] : raw.body) {
      auto tokens = split_ws(line);
      if (tokens[0] == "states") {
        m.states.assign(tokens.begin() + 1, tokens.end());
      } else if (tokens[0] == "initial") {
        if (tokens.size() != 2) fail(num, "initial takes one state");
        m.initial = lookup(m.states, tokens[1], num, "state");
      } else {
        transitions.push_back({num, line});
      }
    }
    if (m.states.empty()) throw Error(Error::Code::Parse, "observer has no states");
    m.next.assign(m.states.size(), std::vector<int>(game.move_count(), -1));
    m.output.assign(m.states.size(), std::vector<int>(game.move_count(), -1));
    for (const auto& [num, line] : transitions) {
      // state, profile, direction -> state / output
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) fail(num, "expected '->'");
      size_t slash = line.find('/', arrow);
      if (slash == std::string::npos) fail(num, "expected '/ output'");
      auto lhs = split_on(line.substr(0, arrow), ',');
      if (lhs.size() != 3) fail(num, "expected: state, profile, direction -> state / output");
      int q = lookup(m.states, lhs[0], num, "state");
      int profile = parse_profile(game, lhs[1], num);
      int dir = lookup(game.directions, lhs[2], num, "direction");
      std::string target = trim(line.substr(arrow + 2, slash - arrow - 2));
      std::string obs = trim(line.substr(slash + 1));
      int g = game.move_index(profile, dir);
      m.next[q][g] = lookup(m.states, target, num, "state");
      auto [it, inserted] = obs_index.emplace(obs, static_cast<int>(m.observations.size()));
      if (inserted) m.observations.push_back(obs);
      m.output[q][g] = it->second;
    }
    game.observers[raw.player] = std::move(m);
  }

  if (has_spec) {
    ParityTreeAutomaton spec;
    std::vector<std::pair<int, std::string>> transitions;
    bool saw_initial = false;
    for (const auto& [num, line] : spec_body) {
      auto tokens = split_ws(line);
      if (tokens[0] == "states") {
        spec.states.assign(tokens.begin() + 1, tokens.end());
        spec.priority.assign(spec.states.size(), -1);
      } else if (tokens[0] == "initial") {
        if (tokens.size() != 2) fail(num, "initial takes one state");
        spec.initial = lookup(spec.states, tokens[1], num, "state");
        saw_initial = true;
      } else if (tokens[0] == "priority") {
        if (tokens.size() != 3) fail(num, "expected: priority <state> <value>");
        spec.priority[lookup(spec.states, tokens[1], num, "state")] = std::stoi(tokens[2]);
      } else if (tokens[0] == "observable") {
        spec.observable = true;
      } else {
        transitions.push_back({num, line});
      }
    }
    if (spec.states.empty()) throw Error(Error::Code::Parse, "spec has no states");
    if (!saw_initial) throw Error(Error::Code::Parse, "spec has no initial state");
    spec.transitions.assign(spec.states.size(), {});
    for (auto& row : spec.transitions) row.resize(out.game.profile_count());
    int dirs = game.direction_count();
    for (const auto& [num, line] : transitions) {
      // state, profile -> (d0: s0, d1: s1, ...)
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) fail(num, "expected '->'");
      auto lhs = split_on(line.substr(0, arrow), ',');
      if (lhs.size() != 2) fail(num, "expected: state, profile -> (...)");
      int q = lookup(spec.states, lhs[0], num, "state");
      int profile = parse_profile(game, lhs[1], num);
      std::string rhs = trim(line.substr(arrow + 2));
      if (rhs.size() < 2 || rhs.front() != '(' || rhs.back() != ')') {
        fail(num, "expected a (direction: state, ...) tuple");
      }
      std::vector<int> tuple(dirs, -1);
      for (const std::string& part : split_on(rhs.substr(1, rhs.size() - 2), ',')) {
        size_t colon = part.find(':');
        if (colon == std::string::npos) fail(num, "expected 'direction: state'");
        int d = lookup(game.directions, trim(part.substr(0, colon)), num, "direction");
        tuple[d] = lookup(spec.states, trim(part.substr(colon + 1)), num, "state");
      }
      for (int d = 0; d < dirs; ++d) {
        if (tuple[d] < 0) fail(num, "tuple misses direction " + game.directions[d]);
      }
      spec.transitions[q][profile].push_back(std::move(tuple));
    }
    renormalize_priorities(spec);
    out.spec = std::move(spec);
  }
  return out;
}

ParsedGame parse_game_file(const std::string& path) { return parse_game_text(read_file(path)); }

std::string serialize_game(const ParsedGame& parsed) {
  const GameSpec& game = parsed.game;
  std::ostringstream out;
  out << "players " << game.players << "\n";
  for (int p = 0; p < game.players; ++p) {
    out << "actions " << p;
    for (const auto& a : game.actions[p]) out << " " << a;
    out << "\n";
  }
  out << "directions";
  for (const auto& d : game.directions) out << " " << d;
  out << "\n";
  if (parsed.delay) {
    out << "delay " << *parsed.delay << "\n";
  } else {
    for (int p = 0; p < game.players; ++p) {
      const MealyMachine& m = game.observers[p];
      out << "observer " << p << " {\n";
      out << "  states";
      for (const auto& q : m.states) out << " " << q;
      out << "\n  initial " << m.states[m.initial] << "\n";
      for (int q = 0; q < m.state_count(); ++q) {
        for (int a = 0; a < game.profile_count(); ++a) {
          for (int d = 0; d < game.direction_count(); ++d) {
            int g = game.move_index(a, d);
            out << "  " << m.states[q] << ", " << game.profile_name(a) << ", "
                << game.directions[d] << " -> " << m.states[m.next[q][g]] << " / "
                << m.observations[m.output[q][g]] << "\n";
          }
        }
      }
      out << "}\n";
    }
  }
  if (parsed.spec) {
    const ParityTreeAutomaton& spec = *parsed.spec;
    out << "spec {\n  states";
    for (const auto& s : spec.states) out << " " << s;
    out << "\n  initial " << spec.states[spec.initial] << "\n";
    for (int q = 0; q < spec.state_count(); ++q) {
      out << "  priority " << spec.states[q] << " " << spec.priority[q] << "\n";
    }
    if (spec.observable) out << "  observable\n";
    for (int q = 0; q < spec.state_count(); ++q) {
      for (int a = 0; a < parsed.game.profile_count(); ++a) {
        for (const auto& tuple : spec.tuples(q, a)) {
          out << "  " << spec.states[q] << ", " << parsed.game.profile_name(a) << " -> (";
          for (int d = 0; d < parsed.game.direction_count(); ++d) {
            if (d) out << ", ";
            out << parsed.game.directions[d] << ": " << spec.states[tuple[d]];
          }
          out << ")\n";
        }
      }
    }
    out << "}\n";
  }
  return out.str();
}

namespace {

struct StrategyBuilder {
  std::vector<std::string> names;
  std::map<std::string, int> index;
  std::vector<int> choice;
  std::vector<char> frontier;
  std::map<std::pair<int, int>, int> edges;
  int initial = -1;

  int node(const std::string& name, int line) {
    auto it = index.find(name);
    if (it == index.end()) fail(line, "unknown node '" + name + "'");
    return it->second;
  }
};

}  // namespace

DecisionStructure parse_strategy_text(const GameSpec& game, const std::string& text) {
  Lines lines(text);
  StrategyBuilder b;
  std::vector<std::tuple<int, std::string, std::string, std::string>> edge_lines;
  for (const auto& [num, line] : lines.content) {
    auto tokens = split_ws(line);
    if (tokens[0] == "node") {
      if (tokens.size() < 3) fail(num, "expected: node <name> <profile>");
      size_t name_at = line.find(tokens[1], 4);
      std::string profile_text = line.substr(name_at + tokens[1].size());
      if (b.index.count(tokens[1])) fail(num, "duplicate node '" + tokens[1] + "'");
      b.index.emplace(tokens[1], static_cast<int>(b.names.size()));
      b.names.push_back(tokens[1]);
      b.choice.push_back(parse_profile(game, trim(profile_text), num));
      b.frontier.push_back(0);
    } else if (tokens[0] == "initial") {
      if (tokens.size() != 2) fail(num, "initial takes one node");
      b.initial = b.node(tokens[1], num);
    } else if (tokens[0] == "frontier") {
      for (size_t t = 1; t < tokens.size(); ++t) b.frontier[b.node(tokens[t], num)] = 1;
    } else {
      // node, direction -> node
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) fail(num, "expected '->'");
      auto lhs = split_on(line.substr(0, arrow), ',');
      if (lhs.size() != 2) fail(num, "expected: node, direction -> node");
      edge_lines.push_back({num, lhs[0], lhs[1], trim(line.substr(arrow + 2))});
    }
  }
  if (b.initial < 0) throw Error(Error::Code::Parse, "strategy has no initial node");
  DecisionStructure s;
  s.nodes = b.names;
  s.choice = b.choice;
  s.frontier = b.frontier;
  s.initial = b.initial;
  s.edge.assign(b.names.size(), std::vector<int>(game.direction_count(), -1));
  for (const auto& [num, from, dir, to] : edge_lines) {
    int v = b.node(from, num);
    int d = lookup(game.directions, dir, num, "direction");
    s.edge[v][d] = b.node(to, num);
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.is_frontier(v)) {
      for (int d = 0; d < game.direction_count(); ++d) {
        if (s.edge[v][d] < 0) s.edge[v][d] = v;
      }
    }
    for (int d = 0; d < game.direction_count(); ++d) {
      if (s.edge[v][d] < 0) {
        throw Error(Error::Code::Parse, "node " + s.nodes[v] + " misses an edge for direction " +
                                            game.directions[d]);
      }
    }
  }
  return prune_reachable(s);
}

DecisionStructure parse_strategy_file(const GameSpec& game, const std::string& path) {
  return parse_strategy_text(game, read_file(path));
}

std::string serialize_strategy(const GameSpec& game, const DecisionStructure& s) {
  std::ostringstream out;
  for (int v = 0; v < s.node_count(); ++v) {
    out << "node " << s.nodes[v] << " " << game.profile_name(s.choice[v]) << "\n";
  }
  out << "initial " << s.nodes[s.initial] << "\n";
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.is_frontier(v)) out << "frontier " << s.nodes[v] << "\n";
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.is_frontier(v)) continue;
    for (int d = 0; d < game.direction_count(); ++d) {
      out << s.nodes[v] << ", " << game.directions[d] << " -> " << s.nodes[s.edge[v][d]] << "\n";
    }
  }
  return out.str();
}

CertificateFile parse_certificate_text(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       const std::string& text) {
  // Split label/measure lines from the plain strategy part.
  Lines lines(text);
  std::ostringstream strategy_text;
  std::vector<std::pair<int, std::string>> label_lines, measure_lines;
  for (const auto& [num, line] : lines.content) {
    auto tokens = split_ws(line);
    if (tokens[0] == "label") {
      label_lines.push_back({num, line});
    } else if (tokens[0] == "measure") {
      measure_lines.push_back({num, line});
    } else {
      strategy_text << line << "\n";
    }
  }
  CertificateFile out;
  out.structure = parse_strategy_text(game, strategy_text.str());
  auto node_of = [&](const std::string& name, int num) {
    for (int v = 0; v < out.structure.node_count(); ++v) {
      if (out.structure.nodes[v] == name) return v;
    }
    fail(num, "unknown node '" + name + "'");
  };
  if (!label_lines.empty()) {
    Annotation labels;
    labels.mealy.assign(out.structure.node_count(), std::vector<int>(game.players, -1));
    labels.wstate.assign(out.structure.node_count(), -1);
    for (const auto& [num, line] : label_lines) {
      // label <node> -> (q0,...,qn-1 | s)
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) fail(num, "expected '->'");
      std::string name = trim(line.substr(5, arrow - 5));
      int v = node_of(name, num);
      std::string rhs = trim(line.substr(arrow + 2));
      if (rhs.size() < 2 || rhs.front() != '(' || rhs.back() != ')') {
        fail(num, "expected (observer states | spec state)");
      }
      rhs = rhs.substr(1, rhs.size() - 2);
      size_t bar = rhs.find('|');
      if (bar == std::string::npos) fail(num, "expected '|' separating observer and spec states");
      auto mealy_parts = split_on(trim(rhs.substr(0, bar)), ',');
      if (static_cast<int>(mealy_parts.size()) != game.players) {
        fail(num, "expected one observer state per player");
      }
      for (int i = 0; i < game.players; ++i) {
        labels.mealy[v][i] = lookup(game.observers[i].states, mealy_parts[i], num, "state");
      }
      labels.wstate[v] = lookup(spec.states, trim(rhs.substr(bar + 1)), num, "state");
    }
    for (int v = 0; v < out.structure.node_count(); ++v) {
      if (labels.wstate[v] < 0) {
        throw Error(Error::Code::Parse,
                    "node " + out.structure.nodes[v] + " carries no label");
      }
    }
    out.labels = std::move(labels);
  }
  if (!measure_lines.empty()) {
    ProgressMeasure measure;
    measure.priorities = std::max(spec.priority_count, 1);
    measure.mu.assign(out.structure.node_count(), {});
    for (const auto& [num, line] : measure_lines) {
      // measure <node> -> (m0,...,mr-1)
      size_t arrow = line.find("->");
      if (arrow == std::string::npos) fail(num, "expected '->'");
      std::string name = trim(line.substr(7, arrow - 7));
      int v = node_of(name, num);
      std::string rhs = trim(line.substr(arrow + 2));
      if (rhs.size() < 2 || rhs.front() != '(' || rhs.back() != ')') {
        fail(num, "expected a tuple");
      }
      std::vector<unsigned> tuple;
      for (const std::string& part : split_on(rhs.substr(1, rhs.size() - 2), ',')) {
        tuple.push_back(static_cast<unsigned>(std::stoul(part)));
      }
      if (static_cast<int>(tuple.size()) != measure.priorities) {
        fail(num, "measure tuple must have " + std::to_string(measure.priorities) +
                      " components");
      }
      measure.mu[v] = std::move(tuple);
    }
    for (int v = 0; v < out.structure.node_count(); ++v) {
      if (measure.mu[v].empty()) {
        throw Error(Error::Code::Parse,
                    "node " + out.structure.nodes[v] + " carries no measure");
      }
    }
    out.measure = std::move(measure);
  }
  return out;
}

CertificateFile parse_certificate_file(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       const std::string& path) {
  return parse_certificate_text(game, spec, read_file(path));
}

std::string serialize_certificate(const GameSpec& game, const ParityTreeAutomaton& spec,
                                  const AnnotatedStrategy& annotated,
                                  const ProgressMeasure* measure) {
  std::ostringstream out;
  out << serialize_strategy(game, annotated.structure);
  for (int v = 0; v < annotated.node_count(); ++v) {
    out << "label " << annotated.structure.nodes[v] << " -> (";
    for (int i = 0; i < game.players; ++i) {
      if (i) out << ",";
      out << game.observers[i].states[annotated.labels.mealy[v][i]];
    }
    out << " | " << spec.states[annotated.labels.wstate[v]] << ")\n";
  }
  if (measure) {
    for (int v = 0; v < annotated.node_count(); ++v) {
      out << "measure " << annotated.structure.nodes[v] << " -> (";
      for (int k = 0; k < measure->priorities; ++k) {
        if (k) out << ",";
        out << measure->mu[v][k];
      }
      out << ")\n";
    }
  }
  return out.str();
}

RetractionMap parse_retraction_text(const DecisionStructure& s, const std::string& text) {
  Lines lines(text);
  RetractionMap h = identity_map(s.node_count());
  auto node_of = [&](const std::string& name, int num) {
    for (int v = 0; v < s.node_count(); ++v) {
      if (s.nodes[v] == name) return v;
    }
    fail(num, "unknown node '" + name + "'");
  };
  for (const auto& [num, line] : lines.content) {
    size_t arrow = line.find("->");
    if (arrow == std::string::npos) fail(num, "expected 'node -> node'");
    int v = node_of(trim(line.substr(0, arrow)), num);
    h.target[v] = node_of(trim(line.substr(arrow + 2)), num);
  }
  return h;
}

std::string serialize_retraction(const DecisionStructure& s, const RetractionMap& h) {
  std::ostringstream out;
  for (int v = 0; v < s.node_count(); ++v) {
    out << s.nodes[v] << " -> " << s.nodes[h.target[v]] << "\n";
  }
  return out.str();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* kPlayerColors[] = {"blue", "red", "darkgreen", "orange", "purple", "brown"};

}  // namespace

std::string export_dot_strategy(const GameSpec& game, const DecisionStructure& s,
                                const UniformityRelation* uniformity) {
  std::ostringstream out;
  out << "digraph strategy {\n";
  for (int v = 0; v < s.node_count(); ++v) {
    out << "  n" << v << " [label=\"" << dot_escape(s.nodes[v]) << "\\n"
        << dot_escape(game.profile_name(s.choice[v])) << "\"";
    if (v == s.initial) out << ", shape=doublecircle";
    if (s.is_frontier(v)) out << ", style=dotted";
    out << "];\n";
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.is_frontier(v)) continue;
    for (int d = 0; d < game.direction_count(); ++d) {
      out << "  n" << v << " -> n" << s.edge[v][d] << " [label=\""
          << dot_escape(game.directions[d]) << "\"];\n";
    }
  }
  if (uniformity) {
    for (int i = 0; i < game.players; ++i) {
      const char* color = kPlayerColors[i % 6];
      for (auto [u, v] : uniformity->pairs[i]) {
        if (u >= v) continue;  // reflexive pairs are implicit
        out << "  n" << u << " -> n" << v << " [dir=none, style=dashed, color=" << color
            << "];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot_annotated(const GameSpec& game, const ParityTreeAutomaton& spec,
                                 const AnnotatedStrategy& annotated,
                                 const ProgressMeasure* measure) {
  const DecisionStructure& s = annotated.structure;
  std::ostringstream out;
  out << "digraph certificate {\n";
  for (int v = 0; v < s.node_count(); ++v) {
    out << "  n" << v << " [label=\"" << dot_escape(game.profile_name(s.choice[v])) << " | "
        << dot_escape(spec.states[annotated.labels.wstate[v]]) << " ("
        << spec.priority[annotated.labels.wstate[v]] << ")";
    if (measure) {
      out << "\\n(";
      for (int k = 0; k < measure->priorities; ++k) {
        if (k) out << ",";
        out << measure->mu[v][k];
      }
      out << ")";
    }
    out << "\"";
    if (v == s.initial) out << ", shape=doublecircle";
    if (s.is_frontier(v)) out << ", style=dotted";
    out << "];\n";
  }
  for (int v = 0; v < s.node_count(); ++v) {
    if (s.is_frontier(v)) continue;
    for (int d = 0; d < game.direction_count(); ++d) {
      out << "  n" << v << " -> n" << s.edge[v][d] << " [label=\""
          << dot_escape(game.directions[d]) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_dot_quotient(const GameSpec& game, const std::vector<DState>& dstates,
                                const ClassReport& classes) {
  (void)game;
  std::ostringstream out;
  out << "digraph dstate_quotient {\n";
  out << "  graph [label=\"index=" << classes.index() << " max_size=" << classes.max_dstate_size
      << " max_class=" << classes.max_class_size << "\"];\n";
  std::vector<int> class_of(dstates.size(), -1);
  for (int c = 0; c < classes.index(); ++c) {
    for (int d : classes.classes[c]) class_of[d] = c;
    out << "  c" << c << " [label=\"class " << c << "\\nmembers=" << classes.classes[c].size()
        << " size=" << dstates[classes.classes[c].front()].size() << "\"];\n";
  }
  std::set<std::pair<int, int>> drawn;
  for (size_t d = 0; d < dstates.size(); ++d) {
    for (auto [u, dir, ambient] : dstates[d].exits) {
      // Find the component that owns the ambient target.
      for (size_t e = 0; e < dstates.size(); ++e) {
        if (dstates[e].local_index(ambient) >= 0) {
          if (drawn.emplace(class_of[d], class_of[e]).second) {
            out << "  c" << class_of[d] << " -> c" << class_of[e] << ";\n";
          }
          break;
        }
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Code::Io, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Error::Code::Io, "cannot write " + path);
  out << content;
}

// ---- SHA-256 ----

namespace {

struct Sha256 {
  uint32_t h[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  uint64_t length = 0;
  std::array<uint8_t, 64> block{};
  size_t fill = 0;

  static uint32_t rotr(uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void compress(const uint8_t* p) {
    static const uint32_t k[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};
    uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
             (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    }
    for (int i = 16; i < 64; ++i) {
      uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5], g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      uint32_t ch = (e & f) ^ (~e & g);
      uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const uint8_t* data, size_t len) {
    length += len;
    while (len > 0) {
      size_t take = std::min(len, block.size() - fill);
      std::copy(data, data + take, block.begin() + fill);
      fill += take;
      data += take;
      len -= take;
      if (fill == block.size()) {
        compress(block.data());
        fill = 0;
      }
    }
  }

  std::string finish() {
    uint64_t bits = length * 8;
    uint8_t pad = 0x80;
    update(&pad, 1);
    uint8_t zero = 0;
    while (fill != 56) update(&zero, 1);
    uint8_t len_bytes[8];
    for (int i = 0; i < 8; ++i) len_bytes[i] = uint8_t(bits >> (56 - 8 * i));
    update(len_bytes, 8);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (uint32_t word : h) {
      for (int i = 28; i >= 0; i -= 4) out += hex[(word >> i) & 0xf];
    }
    return out;
  }
};

}  // namespace

std::string sha256_hex(const std::string& data) {
  Sha256 state;
  state.update(reinterpret_cast<const uint8_t*>(data.data()), data.size());
  return state.finish();
}

std::string serialize_manifest(const RunManifest& manifest) {
  std::ostringstream out;
  out << "manifest {\n";
  out << "  version: " << manifest.version << "\n";
  out << "  command:";
  for (const auto& arg : manifest.argv) out << " " << arg;
  out << "\n";
  for (const auto& [path, digest] : manifest.inputs) {
    out << "  input " << path << " sha256 " << digest << "\n";
  }
  for (const auto& [path, digest] : manifest.outputs) {
    out << "  output " << path << " sha256 " << digest << "\n";
  }
  for (const auto& verdict : manifest.verdicts) {
    out << "  verdict: " << verdict << "\n";
  }
  out << "}\n";
  return out.str();
}

RunManifest parse_manifest_text(const std::string& text) {
  Lines lines(text);
  RunManifest manifest;
  for (const auto& [num, line] : lines.content) {
    auto tokens = split_ws(line);
    if (tokens[0] == "manifest" || tokens[0] == "}") continue;
    if (tokens[0] == "version:") {
      manifest.version = trim(line.substr(line.find(':') + 1));
    } else if (tokens[0] == "command:") {
      manifest.argv.assign(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "input" && tokens.size() == 4) {
      manifest.inputs.push_back({tokens[1], tokens[3]});
    } else if (tokens[0] == "output" && tokens.size() == 4) {
      manifest.outputs.push_back({tokens[1], tokens[3]});
    } else if (tokens[0] == "verdict:") {
      manifest.verdicts.push_back(trim(line.substr(line.find(':') + 1)));
    } else {
      fail(num, "unrecognized manifest line");
    }
  }
  return manifest;
}

}  // namespace gamefold
