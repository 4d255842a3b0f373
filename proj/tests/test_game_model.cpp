#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "neforge/conditions.hpp"
#include "neforge/enumerate.hpp"
#include "neforge/equilibrium.hpp"
#include "neforge/error.hpp"
#include "oracles.hpp"

using namespace neforge;
using fixtures::game;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

// 0 -> {1, 2}; 1 and 2 are self-loops with exits to sinks 3 and 4.
// Components: {0} transient, {1} = c_1, {2} = c_2, {3} = a_1, {4} = a_2.
Game dgms2(std::vector<std::vector<std::string>> prefs, int players = 1) {
  std::map<Vertex, int> owner{{0, 1}, {1, 1}, {2, 1}};
  if (players > 1) owner[1] = 2;
  return game(5, {{0, 1}, {0, 2}, {1, 1}, {1, 3}, {2, 2}, {2, 4}}, players, owner, std::move(prefs), Mode::DGMS);
}

Game dg_prefs(std::vector<std::vector<std::string>> prefs) {
  // one vertex per player, each with a self-loop... the shape does not matter for the counters
  const int n = static_cast<int>(prefs.size());
  std::vector<Edge> edges;
  std::map<Vertex, int> owner;
  for (int i = 0; i < n; ++i) {
    owner[i] = i + 1;
    edges.emplace_back(i, i + 1 < n ? i + 1 : i);
  }
  // terminals n.. for a_1..a_3
  edges.emplace_back(0, n);
  edges.emplace_back(0, n + 1);
  edges.emplace_back(0, n + 2);
  return game(static_cast<std::size_t>(n + 3), edges, n, owner, std::move(prefs));
}

}  // namespace

TEST_CASE("validate accepts G1 and flags each invariant separately") {
  CHECK_NOTHROW(fixtures::g1());
  CHECK(kind_of([] { fixtures::g1({{"a:2", "a:1"}, {"a:1", "a:2", "c"}}); }) == ErrorKind::PreferenceNotPermutation);
  CHECK(kind_of([] { fixtures::g1({{"a:2", "a:2", "c"}, {"a:1", "a:2", "c"}}); }) ==
        ErrorKind::PreferenceNotPermutation);
  CHECK(kind_of([] { fixtures::g1({{"a:2", "a:5", "c"}, {"a:1", "a:2", "c"}}); }) == ErrorKind::LabelMismatch);
  CHECK(kind_of([] { fixtures::g1({{"a:2", "a:1", "c:1"}, {"a:1", "a:2", "c"}}); }) == ErrorKind::ModeMismatch);
  CHECK(kind_of([] { game(4, {{0, 1}, {0, 2}, {1, 0}, {1, 3}}, 2, {{0, 1}}, {{"c", "a:1", "a:2"}, {"c", "a:1", "a:2"}}); }) ==
        ErrorKind::OwnershipGap);
  CHECK(kind_of([] {
          game(4, {{0, 1}, {0, 2}, {1, 0}, {1, 3}}, 2, {{0, 1}, {1, 3}}, {{"c", "a:1", "a:2"}, {"c", "a:1", "a:2"}});
        }) == ErrorKind::OwnershipGap);
  CHECK(kind_of([] {
          game(4, {{0, 1}, {0, 2}, {1, 0}, {1, 3}}, 2, {{0, 1}, {1, 2}}, {{"c", "a:1", "a:2"}, {"c", "a:1", "a:2"}},
               Mode::DG, Vertex{2});
        }) == ErrorKind::InitialTerminal);
  CHECK(kind_of([] { dgms2({{"c", "a:1", "a:2", "c:2"}}); }) == ErrorKind::ModeMismatch);
  CHECK(kind_of([] { game(3, {{0, 5}}, 1, {{0, 1}}, {{"c"}}); }) == ErrorKind::InvalidGraph);
}

TEST_CASE("DG game with two interior SCCs maps both to c") {
  // 0 -> {1, 3}; 1 <-> 2 with exit to 4; 3 self-loop with exit to 4
  Game g = game(5, {{0, 1}, {0, 3}, {1, 2}, {2, 1}, {2, 4}, {3, 3}, {3, 4}}, 1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                {{"a:1", "c"}});
  CHECK(g.form().terminal_outcome_count() == 1);
  CHECK(g.form().cyclic_outcome_count() == 1);
  // the same form in DGMS mode has two cyclic outcomes
  CHECK_NOTHROW(game(5, {{0, 1}, {0, 3}, {1, 2}, {2, 1}, {2, 4}, {3, 3}, {3, 4}}, 1, {{0, 1}, {1, 1}, {2, 1}, {3, 1}},
                     {{"a:1", "c:1", "c:2"}}, Mode::DGMS));
}

TEST_CASE("outcome labels follow the smallest member vertex") {
  Game g = dgms2({{"c:1", "a:1", "c:2", "a:2"}});
  const GameForm& f = g.form();
  CHECK(f.outcome_at(f.component_outcome_id(f.scc().component_of[3])) == Outcome::terminal(1));
  CHECK(f.outcome_at(f.component_outcome_id(f.scc().component_of[4])) == Outcome::terminal(2));
  CHECK(f.outcome_at(f.component_outcome_id(f.scc().component_of[1])) == Outcome::cyclic(1));
  CHECK(f.outcome_at(f.component_outcome_id(f.scc().component_of[2])) == Outcome::cyclic(2));
  CHECK(f.component_outcome_id(f.scc().component_of[0]) == -1);
}

TEST_CASE("a closed cycle is a terminal outcome in DGMS and c in DG") {
  // 0 -> {1, 3}, 1 <-> 2 closed, 3 sink
  const std::vector<Edge> edges{{0, 1}, {0, 3}, {1, 2}, {2, 1}};
  Game dgms = game(4, edges, 1, {{0, 1}, {1, 1}, {2, 1}}, {{"a:1", "a:2"}}, Mode::DGMS);
  CHECK(dgms.form().terminal_outcome_count() == 2);
  CHECK(dgms.form().cyclic_outcome_count() == 0);
  Game dg = game(4, edges, 1, {{0, 1}, {1, 1}, {2, 1}}, {{"a:1", "c"}});
  CHECK(dg.form().terminal_outcome_count() == 1);
}

TEST_CASE("k_c and condition C") {
  Game g = dg_prefs({{"a:1", "c", "a:2", "a:3"}, {"a:1", "a:2", "a:3", "c"}, {"c", "a:1", "a:2", "a:3"}});
  CHECK(k_c(g, 1) == 2);
  CHECK(k_c(g, 2) == 0);
  CHECK(k_c(g, 3) == 3);
  CHECK_FALSE(check_condition_C(g));
  CHECK(check_condition_C(dg_prefs({{"a:1", "a:2", "a:3", "c"}, {"a:3", "a:2", "a:1", "c"}})));
  CHECK_FALSE(check_condition_C(dg_prefs({{"a:1", "c", "a:2", "a:3"}})));
  // p = 0: a single interior SCC
  Game closed = game(2, {{0, 1}, {1, 0}}, 1, {{0, 1}, {1, 1}}, {{"c"}});
  CHECK(closed.form().terminal_outcome_count() == 0);
  CHECK(check_condition_C(closed));
  CHECK(kind_of([] { k_c(dgms2({{"c:1", "a:1", "c:2", "a:2"}}), 1); }) == ErrorKind::ModeMismatch);
}

TEST_CASE("condition C22 and its witnesses") {
  // k_c profile (2, 0, 1)
  auto r = check_condition_C22(dg_prefs({{"a:1", "c", "a:2", "a:3"}, {"a:1", "a:2", "a:3", "c"}, {"a:1", "a:2", "c", "a:3"}}));
  CHECK(r.holds);
  CHECK_FALSE(r.witnesses);
  // (2, 2, 0)
  r = check_condition_C22(dg_prefs({{"a:1", "c", "a:2", "a:3"}, {"a:2", "c", "a:1", "a:3"}, {"a:1", "a:2", "a:3", "c"}}));
  CHECK_FALSE(r.holds);
  REQUIRE(r.witnesses);
  CHECK(*r.witnesses == std::pair{1, 2});
  // (0, 3, 2): smallest pair is (2, 3)
  r = check_condition_C22(dg_prefs({{"a:1", "a:2", "a:3", "c"}, {"c", "a:2", "a:1", "a:3"}, {"a:1", "c", "a:2", "a:3"}}));
  CHECK(*r.witnesses == std::pair{2, 3});
  CHECK(check_condition_C22(dg_prefs({{"c", "a:1", "a:2", "a:3"}})).holds);
}

TEST_CASE("k_interior, C' and C'22") {
  Game g = dgms2({{"c:1", "a:1", "c:2", "a:2"}});
  CHECK(k_interior(g, 1, 1) == 2);
  CHECK(k_interior(g, 1, 2) == 1);
  CHECK(k_interior(dgms2({{"a:1", "a:2", "c:2", "c:1"}}), 1, 1) == 0);
  CHECK(kind_of([&] { k_interior(g, 1, 3); }) == ErrorKind::LabelMismatch);
  CHECK(kind_of([] { k_interior(fixtures::g1(), 1, 1); }) == ErrorKind::ModeMismatch);

  CHECK(check_condition_Cprime(dgms2({{"a:1", "a:2", "c:1", "c:2"}})));
  CHECK_FALSE(check_condition_Cprime(dgms2({{"a:1", "c:1", "a:2", "c:2"}})));
  CHECK(check_condition_Cprime(dgms2({{"c:2", "c:1", "a:1", "a:2"}}), CprimePolarity::Better));
  CHECK_FALSE(check_condition_Cprime(dgms2({{"c:2", "c:1", "a:1", "a:2"}})));

  // one witness player only
  auto r = check_condition_Cprime22(dgms2({{"c:1", "a:1", "a:2", "c:2"}, {"a:1", "c:1", "a:2", "c:2"}}, 2));
  CHECK(r.holds);
  // both players with k(i, c_1) = 2
  r = check_condition_Cprime22(dgms2({{"c:1", "a:1", "a:2", "c:2"}, {"c:1", "c:2", "a:1", "a:2"}}, 2));
  CHECK_FALSE(r.holds);
  REQUIRE(r.witnesses);
  CHECK(r.witnesses->first == std::pair{1, 1});
  CHECK(r.witnesses->second == std::pair{2, 1});
  CHECK(kind_of([] { check_condition_Cprime(fixtures::g1()); }) == ErrorKind::ModeMismatch);
}

TEST_CASE("merge_cyclic_outcomes") {
  Game merged = merge_cyclic_outcomes(dgms2({{"a:1", "c:1", "c:2", "a:2"}}));
  CHECK(merged.mode() == Mode::DG);
  CHECK(merged.preference(1) == PreferenceOrder{Outcome::terminal(1), Outcome::cyclic(), Outcome::terminal(2)});
  CHECK(merged.graph() == dgms2({{"a:1", "c:1", "c:2", "a:2"}}).graph());
  CHECK(merge_cyclic_outcomes(dgms2({{"c:1", "c:2", "a:1", "a:2"}})).preference(1) ==
        PreferenceOrder{Outcome::cyclic(), Outcome::terminal(1), Outcome::terminal(2)});
  CHECK(kind_of([] { merge_cyclic_outcomes(dgms2({{"c:1", "a:1", "c:2", "a:2"}})); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { merge_cyclic_outcomes(fixtures::g1()); }) == ErrorKind::ModeMismatch);
}

TEST_CASE("q = 1 DGMS: C' equals C of the merged game") {
  // 0 -> {1, 2, 3}, 1 self-loop exiting to 2, sinks 2 and 3
  std::vector<std::string> outcomes{"a:1", "a:2", "c:1"};
  std::sort(outcomes.begin(), outcomes.end());
  do {
    Game g = game(4, {{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}}, 1, {{0, 1}, {1, 1}}, {outcomes}, Mode::DGMS);
    REQUIRE(check_condition_Cprime(g) == check_condition_C(merge_cyclic_outcomes(g)));
  } while (std::next_permutation(outcomes.begin(), outcomes.end()));
}

TEST_CASE("C implies C22 and C' implies C'22 on exhaustive small enumerations") {
  EnumSpec dg;
  dg.players = 3;
  dg.max_nonterminal = 2;
  dg.max_terminals = 2;
  int dg_games = 0;
  for_each_game(dg, [&](std::uint64_t, const Game& g) {
    ++dg_games;
    if (check_condition_C(g)) REQUIRE(check_condition_C22(g).holds);
  });
  CHECK(dg_games > 0);

  EnumSpec dgms = dg;
  dgms.mode = Mode::DGMS;
  dgms.players = 2;
  int dgms_games = 0;
  for_each_game(dgms, [&](std::uint64_t, const Game& g) {
    ++dgms_games;
    if (check_condition_Cprime(g)) REQUIRE(check_condition_Cprime22(g).holds);
  });
  CHECK(dgms_games > 0);
}

TEST_CASE("merge keeps terminal and terminal-vs-block comparisons, and NE of DGMS stay NE") {
  EnumSpec spec;
  spec.players = 2;
  spec.mode = Mode::DGMS;
  spec.max_nonterminal = 3;
  spec.max_terminals = 1;
  spec.canonical_dedup = true;
  int merged_games = 0;
  for_each_game(spec, [&](std::uint64_t, const Game& g) {
    Game m = [&] {
      try {
        return std::optional<Game>(merge_cyclic_outcomes(g));
      } catch (const Error& e) {
        REQUIRE(e.kind() == ErrorKind::Precondition);
        return std::optional<Game>();
      }
    }().value_or(g);
    if (m.mode() != Mode::DG) return;
    ++merged_games;
    const GameForm& f = g.form();
    const std::vector<Vertex> map = merge_vertex_map(f);
    for (int i = 1; i <= g.players(); ++i) {
      for (int a = 0; a < f.outcome_count(); ++a) {
        for (int b = 0; b < f.outcome_count(); ++b) {
          const Outcome oa = f.outcome_at(a), ob = f.outcome_at(b);
          if (oa.is_cyclic() && ob.is_cyclic()) continue;
          const Outcome ma = oa.is_cyclic() ? Outcome::cyclic() : oa;
          const Outcome mb = ob.is_cyclic() ? Outcome::cyclic() : ob;
          REQUIRE(g.prefers(i, oa, ob) == m.prefers(i, ma, mb));
        }
      }
    }
    for (const auto& s : oracle::all_profiles(f)) {
      if (!is_ne(g, s)) continue;
      std::vector<Vertex> choice(m.form().vertex_count(), -1);
      for (Vertex v = 0; v < static_cast<Vertex>(f.vertex_count()); ++v) {
        if (!m.graph().is_terminal(map[v])) choice[map[v]] = map[s[v]];
      }
      REQUIRE(is_ne(m, StrategyProfile(choice)));
    }
  });
  CHECK(merged_games > 0);
}
