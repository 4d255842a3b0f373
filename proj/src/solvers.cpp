#include "neforge/solvers.hpp"

#include "neforge/equilibrium.hpp"
#include "neforge/error.hpp"

namespace neforge {

StrategyProfile backward_induction(const Game& game) {
  const GameForm& form = game.form();
  const Digraph& g = form.graph();
  auto order = topological_order(g);
  if (!order) throw Error(ErrorKind::Precondition, "backward induction needs an acyclic digraph");

  std::vector<int> value(g.vertex_count(), -1);
  std::vector<Vertex> choice(g.vertex_count(), -1);
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const Vertex v = *it;
    if (g.is_terminal(v)) {
      value[v] = form.component_outcome_id(form.scc().component_of[v]);
      continue;
    }
    const int owner = form.owner(v);
    for (Vertex w : g.successors(v)) {
      if (choice[v] == -1 || game.rank(owner, value[w]) < game.rank(owner, value[choice[v]])) choice[v] = w;
    }
    value[v] = value[choice[v]];
  }
  return StrategyProfile(std::move(choice));
}

namespace {

// Reverse topological sweep over the condensation. Transient vertices act as in
// backward induction; inside a cyclic component each owner leaves through its
// best exit when that beats staying, and stays otherwise.
StrategyProfile condensation_candidate(const Game& game) {
  const GameForm& form = game.form();
  const Digraph& g = form.graph();
  const SccPartition& scc = form.scc();
  const auto order = topological_order(scc.condensation);
  std::vector<int> value(g.vertex_count(), -1);
  std::vector<Vertex> choice(g.vertex_count(), -1);
  Analyzer analyzer(form);

  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const int c = *it;
    const auto& members = scc.components[c];
    const int carried = form.component_outcome_id(c);
    if (scc.scc_class[c] == SccClass::Terminal) {
      for (Vertex v : members) {
        value[v] = carried;
        if (!g.is_terminal(v)) choice[v] = g.successors(v)[0];
      }
      continue;
    }
    for (Vertex v : members) {
      const int owner = form.owner(v);
      Vertex stay = -1, exit = -1;
      for (Vertex w : g.successors(v)) {
        if (scc.component_of[w] == c) {
          if (stay == -1) stay = w;
        } else if (exit == -1 || game.rank(owner, value[w]) < game.rank(owner, value[exit])) {
          exit = w;
        }
      }
      if (stay == -1 || (exit != -1 && game.rank(owner, value[exit]) < game.rank(owner, carried))) {
        choice[v] = exit;
      } else {
        choice[v] = stay;
      }
    }
    // Every choice downstream of this component is fixed now.
    for (Vertex v : members) value[v] = analyzer.play_outcome(choice, v);
  }
  return StrategyProfile(std::move(choice));
}

}  // namespace

StrategyProfile solve_two_person(const Game& game) {
  if (game.players() != 2) {
    throw Error(ErrorKind::Precondition, "solve_two_person needs exactly two players, got " +
                                             std::to_string(game.players()));
  }
  const Vertex start = game.form().initial_or_throw();
  if (is_acyclic(game.graph())) return backward_induction(game);

  StrategyProfile s = condensation_candidate(game);
  const int rounds = 4 * game.form().outcome_count() + 8;
  for (int round = 0; round < rounds; ++round) {
    auto improvement = find_improvement(game, s, start);
    if (!improvement) return s;
    s = deviate(game.form(), s, improvement->player, improvement->deviation);
  }

  NeSearch scan = find_ne(game);
  if (!scan.profile) throw Error(ErrorKind::Precondition, "two-person game without a NE: the input is inconsistent");
  return *scan.profile;
}

}  // namespace neforge
