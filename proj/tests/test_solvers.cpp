#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "neforge/enumerate.hpp"
#include "neforge/equilibrium.hpp"
#include "neforge/error.hpp"
#include "neforge/solvers.hpp"
#include "oracles.hpp"

using namespace neforge;
using fixtures::profile;

TEST_CASE("backward induction on a small tree") {
  // 0 (P1) -> {1, 2}; 1 (P2) -> {a1=3, a2=4}; 2 (P2) -> {a2=4, a3=5}
  Game g = fixtures::game(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}, 2, {{0, 1}, {1, 2}, {2, 2}},
                          {{"a:1", "a:3", "a:2", "c"}, {"a:2", "a:3", "a:1", "c"}});
  // P2 picks a2 at 1 and a2 at 2; P1 is indifferent and takes the smaller successor.
  StrategyProfile s = backward_induction(g);
  CHECK(s == profile({1, 4, 4, -1, -1, -1}));
  CHECK(is_une(g, s));
  CHECK(oracle::is_une(g, s));
}

TEST_CASE("backward induction with three players and shared subtrees") {
  // 0 (P1) -> {1, 2}; 1 (P2) -> {2, a1=3}; 2 (P3) -> {a2=4, a3=5}
  Game g = fixtures::game(6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {2, 5}}, 3, {{0, 1}, {1, 2}, {2, 3}},
                          {{"a:1", "a:2", "a:3", "c"}, {"a:3", "a:2", "a:1", "c"}, {"a:2", "a:3", "a:1", "c"}});
  StrategyProfile s = backward_induction(g);
  CHECK(s == profile({1, 2, 4, -1, -1, -1}));
  CHECK(resolve_play(g, s, 0).outcome == Outcome::terminal(2));
  CHECK(is_une(g, s));
}

TEST_CASE("backward induction rejects cycles") {
  CHECK_THROWS_AS(backward_induction(fixtures::g1()), Error);
}

TEST_CASE("backward induction gives a uniform NE on random acyclic games") {
  std::mt19937_64 rng(99);
  oracle::RandomGameOptions o;
  o.acyclic = true;
  o.max_nonterminal = 5;
  o.max_players = 4;
  for (int round = 0; round < 300; ++round) {
    Game g = oracle::random_game(rng, o);
    StrategyProfile s = backward_induction(g);
    REQUIRE(oracle::is_une(g, s));
    if (g.players() == 2) REQUIRE(solve_two_person(g) == s);
  }
}

TEST_CASE("solve_two_person on G1 for every preference pair") {
  const std::vector<std::vector<std::string>> orders = {
      {"a:1", "a:2", "c"}, {"a:1", "c", "a:2"}, {"a:2", "a:1", "c"},
      {"a:2", "c", "a:1"}, {"c", "a:1", "a:2"}, {"c", "a:2", "a:1"}};
  for (const auto& p1 : orders) {
    for (const auto& p2 : orders) {
      Game g = fixtures::g1({p1, p2});
      StrategyProfile s = solve_two_person(g);
      CHECK(oracle::is_ne(g, s, 0));
    }
  }
}

TEST_CASE("solve_two_person on exhaustive small DG and DGMS suites") {
  for (Mode mode : {Mode::DG, Mode::DGMS}) {
    EnumSpec spec;
    spec.mode = mode;
    spec.max_nonterminal = 3;
    spec.max_terminals = 1;
    spec.max_outdeg = 2;
    spec.canonical_dedup = true;
    std::uint64_t games = 0;
    for_each_game(spec, [&](std::uint64_t, const Game& g) {
      ++games;
      REQUIRE(is_ne(g, solve_two_person(g)));
    });
    CHECK(games > 0);
  }
}

TEST_CASE("solve_two_person on random two-person games") {
  std::mt19937_64 rng(5);
  for (Mode mode : {Mode::DG, Mode::DGMS}) {
    oracle::RandomGameOptions o;
    o.mode = mode;
    o.max_players = 2;
    o.max_nonterminal = 5;
    for (int round = 0; round < 300; ++round) {
      Game g = oracle::random_game(rng, o);
      if (g.players() != 2) continue;
      REQUIRE(oracle::is_ne(g, solve_two_person(g), 0));
    }
  }
}

TEST_CASE("solve_two_person rejects other player counts") {
  CHECK_THROWS_AS(solve_two_person(fixtures::ne_free3()), Error);
}
