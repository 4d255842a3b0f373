#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond the data types and resolve_play.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "neforge/equilibrium.hpp"
#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace oracle {

using namespace neforge;

struct BruteScc {
  std::vector<int> component_of;
  std::vector<std::vector<Vertex>> components;
  std::vector<SccClass> scc_class;
};

// O(V^3) closure, then classes straight from the definitions.
inline BruteScc scc(const Digraph& g) {
  const int n = static_cast<int>(g.vertex_count());
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) {
    r[v][v] = 1;
    for (Vertex w : g.successors(v)) r[v][w] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  BruteScc out;
  out.component_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (out.component_of[v] >= 0) continue;
    const int id = static_cast<int>(out.components.size());
    out.components.emplace_back();
    for (int w = v; w < n; ++w) {
      if (r[v][w] && r[w][v]) {
        out.component_of[w] = id;
        out.components.back().push_back(w);
      }
    }
  }
  for (const auto& comp : out.components) {
    bool leaves = false, cycle = comp.size() > 1;
    for (Vertex v : comp) {
      for (Vertex w : g.successors(v)) {
        if (out.component_of[w] != out.component_of[v]) leaves = true;
        if (w == v) cycle = true;
      }
    }
    out.scc_class.push_back(!leaves ? SccClass::Terminal : cycle ? SccClass::Interior : SccClass::Transient);
  }
  return out;
}

// Every stationary strategy of `player`.
inline std::vector<Strategy> strategies(const GameForm& form, int player) {
  std::vector<Strategy> out{Strategy{}};
  for (Vertex v : form.vertices_of(player)) {
    std::vector<Strategy> next;
    for (const Strategy& t : out) {
      for (Vertex w : form.graph().successors(v)) {
        Strategy u = t;
        u[v] = w;
        next.push_back(u);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::set<Outcome> achievable(const GameForm& form, const StrategyProfile& s, int player, Vertex start) {
  std::set<Outcome> out;
  for (const Strategy& t : strategies(form, player)) out.insert(resolve_play(form, deviate(form, s, player, t), start).outcome);
  return out;
}

inline bool is_ne(const Game& game, const StrategyProfile& s, Vertex start) {
  const Outcome now = resolve_play(game, s, start).outcome;
  for (int i = 1; i <= game.players(); ++i) {
    for (const Strategy& t : strategies(game.form(), i)) {
      if (game.prefers(i, resolve_play(game, deviate(game.form(), s, i, t), start).outcome, now)) return false;
    }
  }
  return true;
}

inline bool is_une(const Game& game, const StrategyProfile& s) {
  for (Vertex v : game.graph().non_terminals()) {
    if (!oracle::is_ne(game, s, v)) return false;
  }
  return true;
}

inline std::vector<StrategyProfile> all_profiles(const GameForm& form) {
  std::vector<std::vector<Vertex>> out{std::vector<Vertex>(form.vertex_count(), -1)};
  for (Vertex v : form.graph().non_terminals()) {
    std::vector<std::vector<Vertex>> next;
    for (const auto& c : out) {
      for (Vertex w : form.graph().successors(v)) {
        auto d = c;
        d[v] = w;
        next.push_back(d);
      }
    }
    out = std::move(next);
  }
  std::vector<StrategyProfile> profiles;
  for (auto& c : out) profiles.emplace_back(std::move(c));
  return profiles;
}

inline bool has_ne(const Game& game) {
  for (const auto& s : all_profiles(game.form())) {
    if (oracle::is_ne(game, s, *game.form().initial())) return true;
  }
  return false;
}

inline bool has_une(const Game& game) {
  for (const auto& s : all_profiles(game.form())) {
    if (oracle::is_une(game, s)) return true;
  }
  return false;
}

struct RandomGameOptions {
  int min_nonterminal = 1;
  int max_nonterminal = 5;
  int max_terminals = 3;
  int max_players = 3;
  int max_outdeg = 3;
  Mode mode = Mode::DG;
  bool acyclic = false;
};

// Vertex 0 is the initial vertex; non-terminals 0..m-1, sinks m..m+t-1. With
// `acyclic`, edges only go to higher ids.
inline Game random_game(std::mt19937_64& rng, const RandomGameOptions& o) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int m = pick(o.min_nonterminal, o.max_nonterminal);
  const int t = pick(o.acyclic ? 1 : 0, o.max_terminals);
  const int n = m + t;
  const int players = pick(1, o.max_players);
  std::vector<Edge> edges;
  for (int v = 0; v < m; ++v) {
    const int lo = o.acyclic ? v + 1 : 0;
    std::vector<int> targets;
    for (int w = lo; w < n; ++w) targets.push_back(w);
    std::shuffle(targets.begin(), targets.end(), rng);
    const int d = pick(1, std::min<int>(o.max_outdeg, static_cast<int>(targets.size())));
    for (int k = 0; k < d; ++k) edges.emplace_back(v, targets[k]);
  }
  std::vector<int> owner(n, 0);
  for (int v = 0; v < m; ++v) owner[v] = pick(1, players);
  auto form = std::make_shared<const GameForm>(Digraph(static_cast<std::size_t>(n), edges), players, owner,
                                               Vertex{0}, o.mode);
  std::vector<PreferenceOrder> prefs;
  for (int i = 0; i < players; ++i) {
    PreferenceOrder order = form->outcomes();
    std::shuffle(order.begin(), order.end(), rng);
    prefs.push_back(order);
  }
  return Game(form, prefs);
}

}  // namespace oracle
