#pragma once

#include <memory>
#include <string>
#include <vector>

#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace fixtures {

using namespace neforge;

inline Game game(std::size_t n, std::vector<Edge> edges, int players, std::map<Vertex, int> owner,
                 std::vector<std::vector<std::string>> prefs, Mode mode = Mode::DG,
                 std::optional<Vertex> initial = Vertex{0}) {
  GameDescription d;
  d.vertex_count = n;
  d.edges = std::move(edges);
  d.players = players;
  d.owner = std::move(owner);
  d.initial = initial;
  d.mode = mode;
  d.preferences = std::move(prefs);
  return make_game(d);
}

// u = 0 (player 1), v = 1 (player 2), a_1 = 2, a_2 = 3.
inline Game g1(std::vector<std::vector<std::string>> prefs = {{"a:2", "a:1", "c"}, {"a:1", "a:2", "c"}}) {
  return game(4, {{0, 1}, {0, 2}, {1, 0}, {1, 3}}, 2, {{0, 1}, {1, 2}}, std::move(prefs));
}

// The NE-free 3-person game found by the exhaustive scan (first in index
// order): 0 -> {1,2}, 1 -> {3,a_1}, 2 -> {3,a_2}, 3 -> {1,a_3}.
inline Game ne_free3() {
  return game(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 1}, {3, 6}}, 3,
              {{0, 1}, {1, 2}, {2, 3}, {3, 3}},
              {{"a:3", "c", "a:2", "a:1"}, {"a:2", "c", "a:1", "a:3"}, {"a:1", "a:2", "a:3", "c"}});
}

inline StrategyProfile profile(std::vector<Vertex> choice) { return StrategyProfile(std::move(choice)); }

}  // namespace fixtures
