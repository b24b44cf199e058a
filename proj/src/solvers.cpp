#include "gamefold/solvers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "gamefold/dstates.hpp"

namespace gamefold {

ParityArena build_product_arena(const GameSpec& game, const ParityTreeAutomaton& spec) {
  ParityArena arena;
  int profiles = game.profile_count();
  int dirs = game.direction_count();
  // One protagonist position per specification state, then one antagonist
  // position per (state, profile, tuple).
  for (int q = 0; q < spec.state_count(); ++q) {
    arena.positions.push_back({0, spec.priority[q], spec.states[q]});
    arena.moves.emplace_back();
  }
  for (int q = 0; q < spec.state_count(); ++q) {
    for (int a = 0; a < profiles; ++a) {
      const auto& tuples = spec.tuples(q, a);
      for (size_t t = 0; t < tuples.size(); ++t) {
        int pos = static_cast<int>(arena.positions.size());
        arena.positions.push_back({1, spec.priority[q],
                                   spec.states[q] + "/" + game.profile_name(a) + "/" +
                                       std::to_string(t)});
        arena.moves.emplace_back();
        arena.moves[q].push_back({a, pos});
        for (int d = 0; d < dirs; ++d) {
          arena.moves[pos].push_back({d, tuples[t][d]});
        }
      }
    }
  }
  arena.initial = spec.initial;
  arena.totalize();
  return arena;
}

std::optional<Certificate> certify(const DecisionStructure& s, const GameSpec& game,
                                   const ParityTreeAutomaton& spec) {
  auto annotated = find_witness_annotation(s, game, spec);
  if (!annotated) return std::nullopt;
  auto measure = compute_measure(*annotated, spec);
  if (!measure) {
    throw Error(Error::Code::Internal, "witness annotation admits no measure");
  }
  return Certificate{std::move(*annotated), std::move(*measure)};
}

namespace {

// ---- observable one-player construction ----

struct BeliefKey {
  std::vector<int> states;  // sorted observer states
  int wstate;
  bool operator<(const BeliefKey& o) const {
    if (wstate != o.wstate) return wstate < o.wstate;
    return states < o.states;
  }
};

struct BeliefArena {
  ParityArena arena;
  std::vector<BeliefKey> beliefs;            // per protagonist position index
  std::map<BeliefKey, int> position_of;      // belief -> protagonist position
  // Successor table: (position, action, observation) -> belief position.
  std::map<std::tuple<int, int, int>, int> successor;
};

const std::vector<int>* unique_tuple(const ParityTreeAutomaton& spec, int q, int a) {
  const auto& tuples = spec.tuples(q, a);
  if (tuples.size() > 1) {
    throw Error(Error::Code::NotObservable,
                "observable mode needs at most one transition per state and action; state " +
                    spec.states[q] + " has " + std::to_string(tuples.size()));
  }
  return tuples.empty() ? nullptr : &tuples.front();
}

BeliefArena build_belief_arena(const GameSpec& game, const ParityTreeAutomaton& spec) {
  const MealyMachine& machine = game.observers[0];
  int dirs = game.direction_count();
  int profiles = game.profile_count();
  BeliefArena out;
  ParityArena& arena = out.arena;

  int losing = -1;  // lazily created protagonist dead end

  BeliefKey init{{machine.initial}, spec.initial};
  out.position_of.emplace(init, 0);
  out.beliefs.push_back(init);
  arena.positions.push_back({0, spec.priority[init.wstate], "U0"});
  arena.moves.emplace_back();

  for (size_t head = 0; head < out.beliefs.size(); ++head) {
    BeliefKey belief = out.beliefs[head];
    int pos = out.position_of.at(belief);
    for (int a = 0; a < profiles; ++a) {
      const std::vector<int>* tuple = unique_tuple(spec, belief.wstate, a);
      if (!tuple) {
        if (losing < 0) {
          losing = static_cast<int>(arena.positions.size());
          arena.positions.push_back({0, 1, "stuck"});
          arena.moves.emplace_back();  // dead end; totalize makes it losing
        }
        arena.moves[pos].push_back({a, losing});
        continue;
      }
      // Group the (observer state, direction) outcomes by observation.
      std::map<int, std::pair<std::set<int>, std::set<int>>> buckets;  // obs -> (next states, next wstates)
      for (int m : belief.states) {
        for (int d = 0; d < dirs; ++d) {
          int g = game.move_index(a, d);
          auto& bucket = buckets[machine.output[m][g]];
          bucket.first.insert(machine.next[m][g]);
          bucket.second.insert((*tuple)[d]);
        }
      }
      int mid = static_cast<int>(arena.positions.size());
      arena.positions.push_back(
          {1, spec.priority[belief.wstate], "U" + std::to_string(head) + "." + game.profile_name(a)});
      arena.moves.emplace_back();
      arena.moves[pos].push_back({a, mid});
      for (const auto& [obs, bucket] : buckets) {
        if (bucket.second.size() != 1) {
          throw Error(Error::Code::NotObservable,
                      "condition is not observable: observation " +
                          game.observers[0].observations[obs] + " after " +
                          game.profile_name(a) + " admits distinct specification states");
        }
        BeliefKey next{{bucket.first.begin(), bucket.first.end()}, *bucket.second.begin()};
        auto [it, inserted] =
            out.position_of.emplace(next, static_cast<int>(arena.positions.size()));
        if (inserted) {
          out.beliefs.push_back(next);
          arena.positions.push_back(
              {0, spec.priority[next.wstate], "U" + std::to_string(out.beliefs.size() - 1)});
          arena.moves.emplace_back();
        }
        arena.moves[mid].push_back({obs, it->second});
        out.successor[{pos, a, obs}] = it->second;
      }
    }
  }
  arena.initial = 0;
  arena.totalize();
  return out;
}

DecisionStructure extract_observable_strategy(const GameSpec& game,
                                              const ParityTreeAutomaton& spec,
                                              const BeliefArena& belief_arena,
                                              const ArenaSolution& sol) {
  const MealyMachine& machine = game.observers[0];
  int dirs = game.direction_count();
  // Strategy nodes pair the belief position with the actual observer state.
  struct Key {
    int pos;
    int mealy;
    bool operator<(const Key& o) const {
      return std::tie(pos, mealy) < std::tie(o.pos, o.mealy);
    }
  };
  std::map<Key, int> index;
  std::vector<Key> order;
  DecisionStructure s;
  Key init{0, machine.initial};
  index.emplace(init, 0);
  order.push_back(init);
  for (size_t head = 0; head < order.size(); ++head) {
    Key key = order[head];
    int move_idx = sol.strategy[key.pos];
    if (move_idx < 0) {
      throw Error(Error::Code::Internal, "extraction left the winning region");
    }
    int action = belief_arena.arena.moves[key.pos][move_idx].first;
    s.nodes.push_back(belief_arena.arena.positions[key.pos].name + "." +
                      machine.states[key.mealy]);
    s.choice.push_back(action);
    s.frontier.push_back(0);
    std::vector<int> edges(dirs, -1);
    for (int d = 0; d < dirs; ++d) {
      int g = game.move_index(action, d);
      int obs = machine.output[key.mealy][g];
      auto it = belief_arena.successor.find({key.pos, action, obs});
      if (it == belief_arena.successor.end()) {
        throw Error(Error::Code::Internal, "missing belief successor");
      }
      Key next{it->second, machine.next[key.mealy][g]};
      auto [nit, inserted] = index.emplace(next, static_cast<int>(order.size()));
      if (inserted) order.push_back(next);
      edges[d] = nit->second;
    }
    s.edge.push_back(std::move(edges));
  }
  s.initial = 0;
  return s;
}

}  // namespace

SolveResult solve_one_player(const GameSpec& game, const ParityTreeAutomaton& spec,
                             const OnePlayerOptions& opts) {
  if (game.players != 1) {
    throw Error(Error::Code::NotOnePlayer, "one-player solving needs exactly one player");
  }
  SolveResult result;
  if (opts.mode == OnePlayerMode::Observable) {
    if (!spec.observable) {
      throw Error(Error::Code::NotObservable,
                  "specification is not declared observable; use general mode");
    }
    BeliefArena belief_arena = build_belief_arena(game, spec);
    ArenaSolution sol = solve_parity(belief_arena.arena);
    if (!sol.initial_won(belief_arena.arena)) {
      result.status = SolveStatus::Losing;
      return result;
    }
    DecisionStructure s = extract_observable_strategy(game, spec, belief_arena, sol);
    auto certificate = certify(s, game, spec);
    if (!certificate) {
      throw Error(Error::Code::Internal, "belief strategy failed certification");
    }
    result.status = SolveStatus::Winning;
    result.strategy = std::move(s);
    result.certificate = std::move(certificate);
    return result;
  }

  // General mode: bounded search with an honest Unknown. The d-state filter
  // keeps candidates within the one-player size bound.
  OracleOptions oracle_opts;
  oracle_opts.memory_bound = opts.max_memory;
  oracle_opts.budget = opts.enumeration_budget;
  oracle_opts.dstate_bound =
      game.observers[0].state_count() * spec.state_count();
  OracleOutcome outcome = brute_force_oracle(game, spec, oracle_opts);
  if (outcome.kind == OracleOutcome::Kind::Winner) {
    result.status = SolveStatus::Winning;
    result.strategy = std::move(outcome.strategy);
    result.certificate = std::move(outcome.certificate);
  } else {
    result.status = SolveStatus::Unknown;
    result.exhausted_bound = opts.max_memory;
  }
  return result;
}

// ---- delay games ----

DelayExpansion expand_delay_game(const GameSpec& base, const ParityTreeAutomaton& base_spec,
                                 int window) {
  if (window < 0 || window > 3) {
    throw Error(Error::Code::DelayOutOfRange, "delay window must lie in 0..3");
  }
  DelayExpansion out;
  out.window = window;
  GameSpec& game = out.game;
  game.players = base.players;
  game.actions = base.actions;
  int base_dirs = base.direction_count();
  for (int d = 0; d < base_dirs; ++d) {
    for (int req = 0; req <= window; ++req) {
      game.directions.push_back(base.directions[d] + "@" + std::to_string(req));
    }
  }

  // Pending buffers of at most `window` base moves, breadth-first over
  // lengths; state 0 is the empty buffer.
  int base_moves = base.profile_count() * base_dirs;
  std::vector<std::vector<int>> buffers{{}};
  std::map<std::vector<int>, int> buffer_index{{{}, 0}};
  for (size_t head = 0; head < buffers.size(); ++head) {
    if (static_cast<int>(buffers[head].size()) >= window) continue;
    for (int g = 0; g < base_moves; ++g) {
      std::vector<int> next = buffers[head];
      next.push_back(g);
      if (buffer_index.emplace(next, static_cast<int>(buffers.size())).second) {
        buffers.push_back(next);
      }
    }
  }

  auto base_move_name = [&](int g) {
    Move mv{g / base_dirs, g % base_dirs};
    return base.move_name(mv);
  };

  int moves = game.move_count();
  for (int player = 0; player < game.players; ++player) {
    MealyMachine machine;
    for (const auto& buffer : buffers) {
      std::string name = "w";
      for (int g : buffer) name += "[" + base_move_name(g) + "]";
      machine.states.push_back(name);
    }
    machine.initial = 0;
    machine.next.assign(buffers.size(), std::vector<int>(moves, -1));
    machine.output.assign(buffers.size(), std::vector<int>(moves, -1));
    std::map<std::string, int> obs_index;
    auto intern_obs = [&](const std::string& name) {
      auto [it, inserted] =
          obs_index.emplace(name, static_cast<int>(machine.observations.size()));
      if (inserted) machine.observations.push_back(name);
      return it->second;
    };
    for (size_t b = 0; b < buffers.size(); ++b) {
      for (int profile = 0; profile < game.profile_count(); ++profile) {
        int own = game.profile_component(profile, player);
        for (int d = 0; d < base_dirs; ++d) {
          for (int req = 0; req <= window; ++req) {
            int dir = d * (window + 1) + req;
            int g = game.move_index(profile, dir);
            std::vector<int> pending = buffers[b];
            pending.push_back(profile * base_dirs + d);
            int lag = std::min(req, static_cast<int>(pending.size()));
            int deliver = static_cast<int>(pending.size()) - lag;
            std::string obs = "a=" + base.actions[player][own] + "|";
            for (int j = 0; j < deliver; ++j) obs += "[" + base_move_name(pending[j]) + "]";
            std::vector<int> rest(pending.begin() + deliver, pending.end());
            machine.next[b][g] = buffer_index.at(rest);
            machine.output[b][g] = intern_obs(obs);
          }
        }
      }
    }
    game.observers.push_back(std::move(machine));
  }

  // Lift the specification: the lag component of a direction is ignored.
  ParityTreeAutomaton& spec = out.spec;
  spec.states = base_spec.states;
  spec.initial = base_spec.initial;
  spec.priority = base_spec.priority;
  spec.priority_count = base_spec.priority_count;
  spec.observable = false;
  spec.transitions.assign(spec.state_count(), {});
  for (int q = 0; q < spec.state_count(); ++q) {
    spec.transitions[q].resize(game.profile_count());
    for (int a = 0; a < game.profile_count(); ++a) {
      for (const auto& tuple : base_spec.tuples(q, a)) {
        std::vector<int> lifted(game.direction_count());
        for (int d = 0; d < base_dirs; ++d) {
          for (int req = 0; req <= window; ++req) lifted[d * (window + 1) + req] = tuple[d];
        }
        spec.transitions[q][a].push_back(std::move(lifted));
      }
    }
  }
  return out;
}

namespace {

// Arena for the delayed-delivery coordination game. Positions track the
// specification state at the delivered frontier and the profiles of the
// pending rounds; directions of pending rounds are resolved at delivery.
struct DelayArena {
  ParityArena arena;
  std::map<std::tuple<int, int, std::vector<int>, int, int>, int> index;
  // key: (kind, wstate, pending profiles, consume, base direction)
  // kind 0 = team to move, 1 = Nature picks the lag, 2 = Nature picks the
  // direction of the head round, 3 = run resolution for the head round.

  int intern(const ParityArena::Position& pos, int kind, int q, const std::vector<int>& pending,
             int consume, int dir, bool* fresh = nullptr) {
    auto key = std::make_tuple(kind, q, pending, consume, dir);
    auto it = index.find(key);
    if (it != index.end()) {
      if (fresh) *fresh = false;
      return it->second;
    }
    int id = static_cast<int>(arena.positions.size());
    arena.positions.push_back(pos);
    arena.moves.emplace_back();
    index.emplace(key, id);
    if (fresh) *fresh = true;
    return id;
  }
};

std::string pending_name(const GameSpec& base, const std::vector<int>& pending) {
  std::string out = "<";
  for (size_t i = 0; i < pending.size(); ++i) {
    if (i) out += " ";
    out += base.profile_name(pending[i]);
  }
  return out + ">";
}

DelayArena build_delay_arena(const GameSpec& base, const ParityTreeAutomaton& spec, int window) {
  DelayArena out;
  int neutral = spec.priority_count;  // larger than every real priority
  int profiles = base.profile_count();
  int base_dirs = base.direction_count();

  struct Item {
    int kind, q, consume, dir;
    std::vector<int> pending;
  };
  std::deque<Item> queue;
  auto push = [&](int kind, int q, std::vector<int> pending, int consume, int dir,
                  int priority, int owner, const std::string& name) {
    bool fresh = false;
    int id = out.intern({owner, priority, name}, kind, q, pending, consume, dir, &fresh);
    if (fresh) queue.push_back({kind, q, consume, dir, std::move(pending)});
    return id;
  };

  int initial =
      push(0, spec.initial, {}, 0, 0, spec.priority[spec.initial], 0, "act|" + spec.states[spec.initial]);
  out.arena.initial = initial;

  while (!queue.empty()) {
    Item item = queue.front();
    queue.pop_front();
    int self = out.index.at(std::make_tuple(item.kind, item.q, item.pending, item.consume, item.dir));
    if (item.kind == 0) {
      // Team picks the joint action profile.
      for (int a = 0; a < profiles; ++a) {
        std::vector<int> pending = item.pending;
        pending.push_back(a);
        int target = push(1, item.q, pending, 0, 0, neutral, 1,
                          "lag|" + spec.states[item.q] + pending_name(base, pending));
        out.arena.moves[self].push_back({a, target});
      }
    } else if (item.kind == 1) {
      // Nature fixes the new lag; the older rounds deliver.
      int m = static_cast<int>(item.pending.size());
      for (int lag = 0; lag <= std::min(window, m); ++lag) {
        int consume = m - lag;
        int target;
        if (consume == 0) {
          target = push(0, item.q, item.pending, 0, 0, spec.priority[item.q], 0,
                        "act|" + spec.states[item.q] + pending_name(base, item.pending));
        } else {
          target = push(2, item.q, item.pending, consume, 0, spec.priority[item.q], 1,
                        "dir|" + spec.states[item.q] + pending_name(base, item.pending) + "#" +
                            std::to_string(consume));
        }
        out.arena.moves[self].push_back({lag, target});
      }
    } else if (item.kind == 2) {
      // Nature reveals the direction of the head round.
      for (int d = 0; d < base_dirs; ++d) {
        int target = push(3, item.q, item.pending, item.consume, d, neutral, 0,
                          "run|" + spec.states[item.q] + pending_name(base, item.pending) + "#" +
                              std::to_string(item.consume) + base.directions[d]);
        out.arena.moves[self].push_back({d, target});
      }
    } else {
      // The run advances over the head round via a chosen transition tuple.
      int head = item.pending.front();
      std::vector<int> rest(item.pending.begin() + 1, item.pending.end());
      const auto& tuples = spec.tuples(item.q, head);
      for (size_t t = 0; t < tuples.size(); ++t) {
        int q_next = tuples[t][item.dir];
        int target;
        if (item.consume - 1 == 0) {
          target = push(0, q_next, rest, 0, 0, spec.priority[q_next], 0,
                        "act|" + spec.states[q_next] + pending_name(base, rest));
        } else {
          target = push(2, q_next, rest, item.consume - 1, 0, spec.priority[q_next], 1,
                        "dir|" + spec.states[q_next] + pending_name(base, rest) + "#" +
                            std::to_string(item.consume - 1));
        }
        out.arena.moves[self].push_back({static_cast<int>(t), target});
      }
      // No tuple: the run is stuck; totalize turns this into a loss.
    }
  }
  out.arena.totalize();
  return out;
}

DecisionStructure extract_delay_strategy(const GameSpec& base, const ParityTreeAutomaton& spec,
                                         int window, const DelayArena& delay_arena,
                                         const ArenaSolution& sol,
                                         const DelayExpansion& expansion) {
  int base_dirs = base.direction_count();
  // Nodes: specification state at the frontier plus pending (profile,
  // direction) rounds. Pending profiles drive the arena lookups; pending
  // directions replay Nature's delivery-time choices.
  struct Key {
    int q;
    std::vector<std::pair<int, int>> pending;
    bool operator<(const Key& o) const { return std::tie(q, pending) < std::tie(o.q, o.pending); }
  };
  auto act_position = [&](int q, const std::vector<std::pair<int, int>>& pending) {
    std::vector<int> profiles;
    for (auto [p, d] : pending) profiles.push_back(p);
    auto it = delay_arena.index.find(std::make_tuple(0, q, profiles, 0, 0));
    if (it == delay_arena.index.end()) {
      throw Error(Error::Code::Internal, "delay extraction lost an arena position");
    }
    return it->second;
  };

  std::map<Key, int> index;
  std::vector<Key> order;
  DecisionStructure s;
  Key init{spec.initial, {}};
  index.emplace(init, 0);
  order.push_back(init);
  while (s.node_count() < static_cast<int>(order.size())) {
    Key key = order[s.node_count()];
    int pos = act_position(key.q, key.pending);
    int choice = sol.strategy[pos];
    if (choice < 0) throw Error(Error::Code::Internal, "delay extraction left the winning region");
    int action = delay_arena.arena.moves[pos][choice].first;
    std::string name = spec.states[key.q] + "|";
    for (auto [p, d] : key.pending) name += "(" + base.profile_name(p) + "," + base.directions[d] + ")";
    s.nodes.push_back(name);
    s.choice.push_back(action);
    s.frontier.push_back(0);
    std::vector<int> edges(expansion.game.direction_count(), -1);
    for (int d = 0; d < base_dirs; ++d) {
      for (int req = 0; req <= window; ++req) {
        std::vector<std::pair<int, int>> pending = key.pending;
        pending.push_back({action, d});
        int m = static_cast<int>(pending.size());
        int lag = std::min(req, m);
        int consume = m - lag;
        int q = key.q;
        for (int j = 0; j < consume; ++j) {
          // Query the run resolution at the matching arena position.
          std::vector<int> profiles;
          for (size_t i = j; i < pending.size(); ++i) profiles.push_back(pending[i].first);
          auto it = delay_arena.index.find(
              std::make_tuple(3, q, profiles, consume - j, pending[j].second));
          if (it == delay_arena.index.end()) {
            throw Error(Error::Code::Internal, "delay extraction lost a run position");
          }
          int run_pos = it->second;
          int tuple_choice = sol.strategy[run_pos];
          if (tuple_choice < 0) {
            throw Error(Error::Code::Internal, "run resolution outside the winning region");
          }
          int t = delay_arena.arena.moves[run_pos][tuple_choice].first;
          q = spec.tuples(q, pending[j].first)[t][pending[j].second];
        }
        Key next{q, {pending.begin() + consume, pending.end()}};
        auto [it2, inserted] = index.emplace(next, static_cast<int>(order.size()));
        if (inserted) order.push_back(next);
        edges[d * (window + 1) + req] = it2->second;
      }
    }
    s.edge.push_back(std::move(edges));
  }
  s.initial = 0;
  return s;
}

}  // namespace

SolveResult solve_delay(const GameSpec& base, const ParityTreeAutomaton& base_spec, int window) {
  DelayExpansion expansion = expand_delay_game(base, base_spec, window);
  DelayArena delay_arena = build_delay_arena(base, base_spec, window);
  ArenaSolution sol = solve_parity(delay_arena.arena);
  SolveResult result;
  if (!sol.protagonist_wins[delay_arena.arena.initial]) {
    result.status = SolveStatus::Losing;
    return result;
  }
  DecisionStructure s =
      extract_delay_strategy(base, base_spec, window, delay_arena, sol, expansion);
  auto certificate = certify(s, expansion.game, expansion.spec);
  if (!certificate) {
    throw Error(Error::Code::Internal, "delay strategy failed certification");
  }
  result.status = SolveStatus::Winning;
  result.strategy = std::move(s);
  result.certificate = std::move(certificate);
  return result;
}

// ---- strategy enumeration oracle ----

namespace {

struct Enumerator {
  const GameSpec& game;
  const ParityTreeAutomaton& spec;
  const OracleOptions& opts;
  int nodes = 0;
  int dirs;
  int profiles;
  long long tried = 0;
  OracleOutcome outcome;

  Enumerator(const GameSpec& g, const ParityTreeAutomaton& sp, const OracleOptions& o)
      : game(g), spec(sp), opts(o), dirs(g.direction_count()), profiles(g.profile_count()) {
    outcome.kind = OracleOutcome::Kind::NoneWithinBound;
  }

  std::vector<int> choice;
  std::vector<std::vector<int>> edge;

  bool finish_candidate() {
    tried++;
    if (tried > opts.budget) {
      outcome.kind = OracleOutcome::Kind::BudgetExceeded;
      outcome.candidates_required = tried;
      return true;
    }
    DecisionStructure s;
    s.initial = 0;
    for (int v = 0; v < nodes; ++v) {
      s.nodes.push_back("n" + std::to_string(v));
      s.choice.push_back(choice[v]);
      s.edge.push_back(edge[v]);
      s.frontier.push_back(0);
    }
    if (check_strategy(s, game)) return false;
    auto annotated = find_witness_annotation(s, game, spec);
    if (!annotated) return false;
    if (opts.dstate_bound > 0) {
      UniformityRelation uni = compute_uniformity(annotated->structure, game);
      auto dstates = compute_dstates(*annotated, game, uni);
      for (const DState& d : dstates) {
        if (d.size() > opts.dstate_bound) return false;
      }
    }
    auto measure = compute_measure(*annotated, spec);
    if (!measure) {
      throw Error(Error::Code::Internal, "witness annotation admits no measure");
    }
    outcome.kind = OracleOutcome::Kind::Winner;
    outcome.strategy = std::move(s);
    outcome.certificate = Certificate{std::move(*annotated), std::move(*measure)};
    return true;
  }

  // Slots in node-major order: the choice of node v, then its edges per
  // direction. Edge targets keep breadth-first discovery order, so each
  // isomorphism class appears exactly once.
  bool assign(int v, int slot, int discovered) {
    if (v == nodes) {
      return discovered == nodes ? finish_candidate() : false;
    }
    if (v >= discovered) return false;  // later nodes can no longer be reached
    if (slot == 0) {
      for (int a = 0; a < profiles; ++a) {
        choice[v] = a;
        if (assign(v, 1, discovered)) return true;
      }
      return false;
    }
    int d = slot - 1;
    if (d == dirs) return assign(v + 1, 0, discovered);
    int limit = std::min(discovered, nodes - 1);
    for (int target = 0; target <= limit; ++target) {
      edge[v][d] = target;
      if (assign(v, slot + 1, target == discovered ? discovered + 1 : discovered)) return true;
    }
    return false;
  }

  void run() {
    for (nodes = 1; nodes <= opts.memory_bound; ++nodes) {
      choice.assign(nodes, 0);
      edge.assign(nodes, std::vector<int>(dirs, 0));
      if (assign(0, 0, 1)) {
        outcome.candidates_tried = tried;
        return;
      }
      if (outcome.kind == OracleOutcome::Kind::BudgetExceeded) break;
    }
    outcome.candidates_tried = tried;
  }
};

}  // namespace

OracleOutcome brute_force_oracle(const GameSpec& game, const ParityTreeAutomaton& spec,
                                 const OracleOptions& opts) {
  if (opts.memory_bound < 1) {
    throw Error(Error::Code::Precondition, "memory bound must be at least 1");
  }
  Enumerator e(game, spec, opts);
  e.run();
  return e.outcome;
}

// ---- growth diagnostics ----

std::vector<GrowthRow> diagnose_growth(const GameSpec& game, const ParityTreeAutomaton& spec,
                                       int depth, const GrowthOptions& opts) {
  std::vector<GrowthRow> table;
  if (opts.strategy) {
    const DecisionStructure& base = *opts.strategy;
    long long width = 1;
    for (int level = 0; level <= depth; ++level) {
      if (width > opts.history_budget) {
        throw Error(Error::Code::BudgetExceeded, "history budget exhausted at depth " +
                                                     std::to_string(level));
      }
      DecisionStructure tree = unravel(base, game, level);
      // Deterministic observer labels; the run component is not needed for
      // the information-structure statistics.
      std::vector<std::vector<int>> mealy(tree.node_count(),
                                          std::vector<int>(game.players, 0));
      std::vector<int> wstate(tree.node_count(), spec.initial);
      for (int i = 0; i < game.players; ++i) mealy[0][i] = game.observers[i].initial;
      for (int v = 0; v < tree.node_count(); ++v) {
        if (tree.is_frontier(v)) continue;
        for (int d = 0; d < game.direction_count(); ++d) {
          int g = game.move_index(tree.choice[v], d);
          for (int i = 0; i < game.players; ++i) {
            mealy[tree.edge[v][d]][i] = game.observers[i].next[mealy[v][i]][g];
          }
        }
      }
      AnnotatedStrategy annotated = attach_labels(tree, std::move(mealy), std::move(wstate));
      UniformityRelation uni = compute_uniformity(tree, game);
      auto dstates = compute_dstates(annotated, game, uni);
      ClassReport report = classify(annotated, game, dstates);
      GrowthRow row;
      row.depth = level;
      row.histories = tree.node_count();
      row.dstates = static_cast<long long>(dstates.size());
      row.max_size = report.max_dstate_size;
      row.class_index = report.index();
      table.push_back(row);
      width *= game.direction_count();
    }
    return table;
  }

  // All-histories mode: histories collapse to (observation class, observer
  // state) profiles; components join the per-player observation classes.
  struct Cell {
    std::vector<int> obs_class;
    std::vector<int> mealy;
    bool operator<(const Cell& o) const {
      return std::tie(obs_class, mealy) < std::tie(o.obs_class, o.mealy);
    }
  };
  std::map<Cell, long long> level;
  Cell init;
  init.obs_class.assign(game.players, 0);
  for (int i = 0; i < game.players; ++i) init.mealy.push_back(game.observers[i].initial);
  level[init] = 1;
  long long total = 1;
  for (int current_depth = 0;; ++current_depth) {
    // Union-find over (player, class) tags joined through each cell.
    std::map<std::pair<int, int>, int> tag_index;
    std::vector<int> parent;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto tag = [&](int player, int cls) {
      auto [it, inserted] = tag_index.emplace(std::make_pair(player, cls),
                                              static_cast<int>(parent.size()));
      if (inserted) parent.push_back(it->second);
      return it->second;
    };
    for (const auto& [cell, count] : level) {
      int first = tag(0, cell.obs_class[0]);
      for (int i = 1; i < game.players; ++i) {
        int a = find(first), b = find(tag(i, cell.obs_class[i]));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<int, long long> sizes;
    for (const auto& [cell, count] : level) {
      sizes[find(tag(0, cell.obs_class[0]))] += count;
    }
    GrowthRow row;
    row.depth = current_depth;
    row.histories = total;
    row.dstates = static_cast<long long>(sizes.size());
    for (const auto& [root, size] : sizes) row.max_size = std::max(row.max_size, size);
    table.push_back(row);
    if (current_depth == depth) break;

    // Advance every cell by every move; observation classes extend by the
    // emitted letters.
    std::vector<std::map<std::pair<int, int>, int>> interners(game.players);
    std::map<Cell, long long> next_level;
    long long next_total = 0;
    for (const auto& [cell, count] : level) {
      for (int g = 0; g < game.move_count(); ++g) {
        Cell next;
        next.obs_class.resize(game.players);
        next.mealy.resize(game.players);
        for (int i = 0; i < game.players; ++i) {
          const MealyMachine& m = game.observers[i];
          int obs = m.output[cell.mealy[i]][g];
          auto [it, inserted] = interners[i].emplace(
              std::make_pair(cell.obs_class[i], obs),
              static_cast<int>(interners[i].size()));
          next.obs_class[i] = it->second;
          next.mealy[i] = m.next[cell.mealy[i]][g];
        }
        next_level[next] += count;
        next_total += count;
      }
    }
    if (next_total > opts.history_budget) {
      throw Error(Error::Code::BudgetExceeded,
                  "history budget exhausted at depth " + std::to_string(current_depth + 1));
    }
    level = std::move(next_level);
    total = next_total;
  }
  return table;
}

}  // namespace gamefold
