#pragma once

#include <string>

#include "gamefold/io.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(GAMEFOLD_FIXTURES) + "/" + name;
}

inline gamefold::ParsedGame load_fixture(const std::string& name) {
  return gamefold::parse_game_file(fixture_path(name));
}

// Single-node structure repeating one action profile.
inline gamefold::DecisionStructure constant_strategy(const gamefold::GameSpec& game,
                                                     int profile) {
  gamefold::DecisionStructure s;
  s.nodes = {"v"};
  s.initial = 0;
  s.choice = {profile};
  s.frontier = {0};
  s.edge = {std::vector<int>(game.direction_count(), 0)};
  return s;
}

}  // namespace testsupport
