#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "neforge/enumerate.hpp"
#include "neforge/equilibrium.hpp"
#include "neforge/solvers.hpp"
#include "oracles.hpp"

using namespace neforge;
using fixtures::profile;

namespace {

std::set<Outcome> as_set(const std::vector<Outcome>& v) { return {v.begin(), v.end()}; }

void check_against_oracle(const Game& g) {
  const GameForm& f = g.form();
  Analyzer analyzer(f);
  for (const auto& s : oracle::all_profiles(f)) {
    for (Vertex v : f.graph().non_terminals()) {
      for (int i = 1; i <= g.players(); ++i) {
        const std::set<Outcome> expected = oracle::achievable(f, s, i, v);
        REQUIRE(as_set(achievable_outcomes(g, s, i, v)) == expected);
        for (int id = 0; id < f.outcome_count(); ++id) {
          auto t = analyzer.realize(s.choices(), i, v, id);
          REQUIRE(t.has_value() == expected.contains(f.outcome_at(id)));
          if (t) REQUIRE(resolve_play(f, deviate(f, s, i, *t), v).outcome == f.outcome_at(id));
        }
      }
      REQUIRE(is_ne(g, s, v) == oracle::is_ne(g, s, v));
    }
  }
}

}  // namespace

TEST_CASE("achievable outcomes on G1") {
  Game g = fixtures::g1();
  CHECK(achievable_outcomes(g, profile({1, 0, -1, -1}), 2, 0) ==
        std::vector<Outcome>{Outcome::terminal(2), Outcome::cyclic()});
  CHECK(achievable_outcomes(g, profile({1, 0, -1, -1}), 1, 0) ==
        std::vector<Outcome>{Outcome::terminal(1), Outcome::cyclic()});
}

TEST_CASE("a player without vertices achieves only the current outcome") {
  Game g = fixtures::game(4, {{0, 1}, {0, 2}, {1, 0}, {1, 3}}, 3, {{0, 1}, {1, 2}},
                          {{"a:2", "a:1", "c"}, {"a:1", "a:2", "c"}, {"c", "a:1", "a:2"}});
  for (const auto& s : enumerate_profiles(g.form())) {
    CHECK(achievable_outcomes(g, s, 3, 0) == std::vector<Outcome>{resolve_play(g, s, 0).outcome});
  }
}

TEST_CASE("a player owning an acyclic graph reaches every reachable terminal") {
  // 0 -> {1, 2}, 1 -> {3, 4}, 2 -> {4, 5}
  Game g = fixtures::game(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}}, 1, {{0, 1}, {1, 1}, {2, 1}},
                          {{"a:1", "a:2", "a:3", "c"}});
  for (const auto& s : enumerate_profiles(g.form())) {
    CHECK(achievable_outcomes(g, s, 1, 0) ==
          std::vector<Outcome>{Outcome::terminal(1), Outcome::terminal(2), Outcome::terminal(3)});
    CHECK(achievable_outcomes(g, s, 1, 2) == std::vector<Outcome>{Outcome::terminal(2), Outcome::terminal(3)});
  }
}

TEST_CASE("is_ne on G1") {
  Game g = fixtures::g1();
  CHECK(is_ne(g, profile({1, 3, -1, -1})));
  CHECK_FALSE(is_ne(g, profile({1, 0, -1, -1})));
  auto imp = find_improvement(g, profile({1, 0, -1, -1}), 0);
  REQUIRE(imp);
  CHECK(imp->player == 1);  // lowest player first: player 1 leaves to a_1
  CHECK(imp->improved == Outcome::terminal(1));

  Game solo = fixtures::game(3, {{0, 1}, {0, 2}}, 1, {{0, 1}}, {{"a:2", "a:1", "c"}});
  CHECK(is_ne(solo, profile({2, -1, -1})));
  CHECK_FALSE(is_ne(solo, profile({1, -1, -1})));
}

TEST_CASE("best-response oracle matches brute force on every micro game") {
  // every DG / DGMS game with 1-2 non-terminals, up to 2 sinks, 1-2 players
  for (Mode mode : {Mode::DG, Mode::DGMS}) {
    for (int players = 1; players <= 2; ++players) {
      EnumSpec spec;
      spec.mode = mode;
      spec.players = players;
      spec.max_nonterminal = 2;
      spec.max_terminals = 2;
      spec.max_outdeg = 4;
      spec.canonical_dedup = true;
      for_each_game(spec, [&](std::uint64_t, const Game& g) { check_against_oracle(g); });
    }
  }
}

TEST_CASE("best-response oracle matches brute force on random games") {
  std::mt19937_64 rng(1234);
  for (Mode mode : {Mode::DG, Mode::DGMS}) {
    oracle::RandomGameOptions o;
    o.mode = mode;
    o.max_nonterminal = 4;
    for (int round = 0; round < 200; ++round) check_against_oracle(oracle::random_game(rng, o));
  }
}

TEST_CASE("is_une") {
  Game g = fixtures::g1();
  // frozen from the brute-force oracle over both starts
  CHECK(oracle::is_une(g, profile({1, 3, -1, -1})));
  CHECK(is_une(g, profile({1, 3, -1, -1})));
  CHECK_FALSE(is_une(g, profile({1, 0, -1, -1})));
  std::mt19937_64 rng(3);
  oracle::RandomGameOptions o;
  o.max_nonterminal = 4;
  for (int round = 0; round < 200; ++round) {
    Game r = oracle::random_game(rng, o);
    for (const auto& s : oracle::all_profiles(r.form())) {
      const bool une = is_une(r, s);
      REQUIRE(une == oracle::is_une(r, s));
      if (une) REQUIRE(is_ne(r, s));
    }
  }
}

TEST_CASE("find_ne and find_une") {
  Game g = fixtures::g1();
  NeSearch r = find_ne(g);
  REQUIRE(r.profile);
  CHECK(r.index == 1);
  CHECK(*r.profile == profile({1, 3, -1, -1}));

  NeSearch u = find_une(g);
  REQUIRE(u.profile);
  CHECK(is_une(g, *u.profile));

  Game acyclic = fixtures::game(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}}, 2, {{0, 1}, {1, 2}},
                                {{"a:2", "a:3", "a:1", "c"}, {"a:2", "a:1", "a:3", "c"}});
  CHECK(find_une(acyclic).profile.has_value());
}

TEST_CASE("NE-free game: certificate replays and inventory is empty") {
  Game g = fixtures::ne_free3();
  NeSearch r = find_ne(g);
  CHECK_FALSE(r.profile);
  CHECK(r.refutation.size() == 16);
  CHECK(verify_certificate(g, r.refutation, CertificateKind::NeFree).ok);
  CHECK_FALSE(oracle::has_ne(g));
  NeInventory inv = ne_inventory(g);
  CHECK(inv.terminal_ne.empty());
  CHECK(inv.cyclic_ne.empty());
  CHECK(inv.vt_reachable_from_initial);

  // tampering is caught
  Certificate bad = r.refutation;
  bad[3].improved = bad[3].improved == Outcome::cyclic() ? Outcome::terminal(1) : Outcome::cyclic();
  CHECK_FALSE(verify_certificate(g, bad, CertificateKind::NeFree).ok);
  bad = r.refutation;
  bad.pop_back();
  CHECK_FALSE(verify_certificate(g, bad, CertificateKind::NeFree).ok);
  bad = r.refutation;
  std::swap(bad[0], bad[1]);
  CHECK_FALSE(verify_certificate(g, bad, CertificateKind::NeFree).ok);
}

TEST_CASE("ne_inventory") {
  NeInventory inv = ne_inventory(fixtures::g1());
  CHECK_FALSE(inv.terminal_ne.empty());
  CHECK(inv.vt_reachable_from_initial);
  for (const auto& e : inv.terminal_ne) CHECK(is_ne(fixtures::g1(), e.profile));

  // one interior SCC, p = 0: every profile is a cyclic NE
  Game closed = fixtures::game(2, {{0, 1}, {1, 0}, {1, 1}}, 2, {{0, 1}, {1, 2}}, {{"c"}, {"c"}});
  NeInventory c = ne_inventory(closed);
  CHECK(c.terminal_ne.empty());
  CHECK(c.cyclic_ne.size() == 2);
  CHECK_FALSE(c.vt_reachable_from_initial);
}

TEST_CASE("two-person games always have a NE on a small exhaustive suite") {
  EnumSpec spec;
  spec.max_nonterminal = 2;
  spec.max_terminals = 2;
  spec.max_outdeg = 3;
  int games = 0;
  for_each_game(spec, [&](std::uint64_t, const Game& g) {
    ++games;
    NeSearch r = find_ne(g);
    REQUIRE(r.profile);
    REQUIRE(oracle::is_ne(g, *r.profile, 0));
  });
  // closed form: sum over (m, t) of sets^m * 2^m * ((t + 1)!)^2, sets = subsets of size 1..3 of m + t vertices
  int expected = 0;
  for (int m = 1; m <= 2; ++m) {
    for (int t = 0; t <= 2; ++t) {
      const int n = m + t;
      const int sets = n + n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6;
      const int orders = t == 0 ? 1 : t == 1 ? 2 : 6;
      int forms = 1;
      for (int k = 0; k < m; ++k) forms *= sets * 2;
      expected += forms * orders * orders;
    }
  }
  CHECK(games == expected);
}
