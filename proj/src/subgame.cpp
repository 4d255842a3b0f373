#include "neforge/subgame.hpp"

#include <string>

#include "neforge/equilibrium.hpp"
#include "neforge/error.hpp"

namespace neforge {

Game remove_initial(const Game& game) {
  const GameForm& form = game.form();
  const Vertex v0 = form.initial_or_throw();
  if (form.mode() == Mode::DGMS && form.scc().scc_class[form.scc().component_of[v0]] != SccClass::Transient) {
    throw Error(ErrorKind::Precondition, "remove_initial: in a DGMS game v_0 must be transient");
  }
  const Digraph& g = form.graph();
  const auto n = static_cast<Vertex>(g.vertex_count());
  auto shift = [v0](Vertex v) { return v > v0 ? v - 1 : v; };
  std::vector<Edge> edges;
  std::vector<int> owner;
  for (Vertex v = 0; v < n; ++v) {
    if (v == v0) continue;
    bool kept = g.is_terminal(v);
    for (Vertex w : g.successors(v)) {
      if (w == v0) continue;
      edges.emplace_back(shift(v), shift(w));
      kept = true;
    }
    if (!kept) {
      throw Error(ErrorKind::Precondition,
                  "remove_initial: v_0 removal creates a new sink at vertex " + std::to_string(v));
    }
    owner.push_back(form.owner(v));
  }
  auto sub = std::make_shared<const GameForm>(Digraph(static_cast<std::size_t>(n - 1), edges), form.players(),
                                              std::move(owner), std::nullopt, form.mode());
  if (sub->terminal_outcome_count() != form.terminal_outcome_count() ||
      sub->cyclic_outcome_count() != form.cyclic_outcome_count()) {
    throw Error(ErrorKind::Precondition, "remove_initial: the subgame has a different outcome set");
  }
  return Game(std::move(sub), game.preferences());
}

StrategyProfile extend_by_best_reply(const Game& game, StrategyProfile partial, std::span<const Vertex> order) {
  const GameForm& form = game.form();
  for (Vertex v : order) {
    if (v < 0 || v >= static_cast<Vertex>(form.vertex_count()) || form.graph().is_terminal(v)) {
      throw Error(ErrorKind::InvalidProfile, "cannot choose at vertex " + std::to_string(v));
    }
    const int player = form.owner(v);
    Vertex best = -1;
    int best_rank = 0;
    for (Vertex w : form.graph().successors(v)) {
      partial.set(v, w);
      const int r = game.rank(player, resolve_play(form, partial, v).outcome);
      if (best < 0 || r < best_rank) {
        best = w;
        best_rank = r;
      }
    }
    partial.set(v, best);
  }
  return partial;
}

StrategyProfile extend_une_to_ne(const Game& game, const StrategyProfile& une_of_subgame) {
  const Game sub = remove_initial(game);
  check_profile(sub.form(), une_of_subgame);
  if (!is_une(sub, une_of_subgame)) {
    throw Error(ErrorKind::Precondition, "extend_une_to_ne: the profile is not a uniform NE of the subgame");
  }
  const Vertex v0 = *game.form().initial();
  std::vector<Vertex> choice(game.form().vertex_count(), -1);
  for (Vertex v = 0; v < static_cast<Vertex>(choice.size()); ++v) {
    if (v == v0) continue;
    const Vertex c = une_of_subgame[v > v0 ? v - 1 : v];
    choice[v] = c < 0 ? -1 : (c >= v0 ? c + 1 : c);
  }
  choice[v0] = game.graph().successors(v0).front();
  const Vertex order[] = {v0};
  return extend_by_best_reply(game, StrategyProfile(std::move(choice)), order);
}

Vertex prefix_core_offset(const Prefix& prefix) {
  Vertex count = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(prefix.graph.vertex_count()); ++v) count += !prefix.graph.is_terminal(v);
  return count;
}

Game extend_with_prefix(const Game& core, const Prefix& prefix) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Precondition, "extend_with_prefix: " + what); };
  const Digraph& pg = prefix.graph;
  const auto pn = static_cast<Vertex>(pg.vertex_count());
  if (pn == 0) fail("empty prefix");
  if (!is_acyclic(pg)) fail("the prefix has a directed cycle");

  std::vector<bool> has_in(pn, false);
  for (auto [u, v] : pg.edges()) has_in[v] = true;
  Vertex initial = -1;
  if (prefix.initial) {
    initial = *prefix.initial;
    if (initial < 0 || initial >= pn || has_in[initial]) fail("the initial vertex must be a prefix source");
  } else {
    for (Vertex v = 0; v < pn && initial < 0; ++v) {
      if (!has_in[v] && !pg.is_terminal(v)) initial = v;
    }
  }
  if (initial < 0 || pg.is_terminal(initial)) fail("the prefix has no non-sink source to start from");

  const auto core_n = static_cast<Vertex>(core.form().vertex_count());
  for (auto [s, target] : prefix.attach) {
    if (s < 0 || s >= pn || !pg.is_terminal(s)) fail("attachment from " + std::to_string(s) + " is not a prefix sink");
    if (target < 0 || target >= core_n) fail("attachment target " + std::to_string(target) + " is not a core vertex");
  }

  const Vertex offset = prefix_core_offset(prefix);
  std::vector<Vertex> place(pn, -1);
  place[initial] = 0;
  Vertex next = 1;
  for (Vertex v = 0; v < pn; ++v) {
    if (v == initial) continue;
    if (pg.is_terminal(v)) {
      auto it = prefix.attach.find(v);
      if (it == prefix.attach.end()) fail("prefix sink " + std::to_string(v) + " is not attached");
      place[v] = it->second + offset;
    } else {
      place[v] = next++;
    }
  }

  std::vector<Edge> edges;
  for (auto [u, v] : pg.edges()) edges.emplace_back(place[u], place[v]);
  for (auto [u, v] : core.graph().edges()) edges.emplace_back(u + offset, v + offset);
  std::vector<int> owner(static_cast<std::size_t>(offset + core_n), 0);
  for (Vertex v = 0; v < pn; ++v) {
    if (pg.is_terminal(v)) continue;
    auto it = prefix.owner.find(v);
    if (it == prefix.owner.end()) throw Error(ErrorKind::OwnershipGap, "prefix vertex " + std::to_string(v) + " has no owner");
    if (it->second < 1 || it->second > core.players()) {
      throw Error(ErrorKind::OwnershipGap, "prefix vertex " + std::to_string(v) + " has an unknown owner");
    }
    owner[place[v]] = it->second;
  }
  for (Vertex v = 0; v < core_n; ++v) owner[v + offset] = core.form().owner(v);

  auto form = std::make_shared<const GameForm>(Digraph(owner.size(), edges), core.players(), std::move(owner),
                                               Vertex{0}, core.mode());
  if (form->terminal_outcome_count() != core.form().terminal_outcome_count() ||
      form->cyclic_outcome_count() != core.form().cyclic_outcome_count()) {
    throw Error(ErrorKind::LabelMismatch, "extend_with_prefix: the outcome set changed");
  }
  return Game(std::move(form), core.preferences());
}

}  // namespace neforge
