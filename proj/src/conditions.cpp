#include "neforge/conditions.hpp"

#include <string>

#include "neforge/error.hpp"

namespace neforge {

namespace {

void require_mode(const Game& game, Mode mode, const char* op, const char* alternative) {
  if (game.mode() != mode) {
    throw Error(ErrorKind::ModeMismatch,
                std::string(op) + " requires a " + to_string(mode) + " game; use " + alternative);
  }
}

int count_terminals_below(const Game& game, int player, int cyclic_id) {
  const int threshold = game.rank(player, cyclic_id);
  int count = 0;
  for (int k = 0; k < game.form().terminal_outcome_count(); ++k) {
    if (game.rank(player, k) > threshold) ++count;
  }
  return count;
}

}  // namespace

int k_c(const Game& game, int player) {
  require_mode(game, Mode::DG, "k_c", "k_interior");
  return count_terminals_below(game, player, game.form().terminal_outcome_count());
}

bool check_condition_C(const Game& game) {
  require_mode(game, Mode::DG, "condition C", "condition C'");
  for (int i = 1; i <= game.players(); ++i) {
    if (k_c(game, i) != 0) return false;
  }
  return true;
}

C22Result check_condition_C22(const Game& game) {
  require_mode(game, Mode::DG, "condition C22", "condition C'22");
  int first = 0;
  for (int i = 1; i <= game.players(); ++i) {
    if (k_c(game, i) < 2) continue;
    if (first == 0) {
      first = i;
    } else {
      return {false, std::pair{first, i}};
    }
  }
  return {};
}

int k_interior(const Game& game, int player, int cyclic_index) {
  require_mode(game, Mode::DGMS, "k_interior", "k_c");
  const GameForm& form = game.form();
  if (cyclic_index < 1 || cyclic_index > form.cyclic_outcome_count()) {
    throw Error(ErrorKind::LabelMismatch, "cyclic index " + std::to_string(cyclic_index) + " out of range 1.." +
                                              std::to_string(form.cyclic_outcome_count()));
  }
  return count_terminals_below(game, player, form.outcome_id(Outcome::cyclic(cyclic_index)));
}

bool check_condition_Cprime(const Game& game, CprimePolarity polarity) {
  require_mode(game, Mode::DGMS, "condition C'", "condition C");
  const int p = game.form().terminal_outcome_count();
  const int q = game.form().cyclic_outcome_count();
  for (int i = 1; i <= game.players(); ++i) {
    for (int j = 1; j <= q; ++j) {
      const int below = k_interior(game, i, j);
      if (polarity == CprimePolarity::Worse ? below != 0 : below != p) return false;
    }
  }
  return true;
}

Cprime22Result check_condition_Cprime22(const Game& game) {
  require_mode(game, Mode::DGMS, "condition C'22", "condition C22");
  std::optional<std::pair<int, int>> first;
  for (int i = 1; i <= game.players(); ++i) {
    for (int j = 1; j <= game.form().cyclic_outcome_count(); ++j) {
      if (k_interior(game, i, j) < 2) continue;
      if (!first) {
        first = std::pair{i, j};
      } else {
        return {false, std::pair{*first, std::pair{i, j}}};
      }
      break;
    }
  }
  return {};
}

std::vector<Vertex> merge_vertex_map(const GameForm& form) {
  return contract_terminal_sccs(form.graph()).vertex_map;
}

Game merge_cyclic_outcomes(const Game& game) {
  require_mode(game, Mode::DGMS, "merge", "a DGMS game");
  const GameForm& form = game.form();
  const int p = form.terminal_outcome_count();

  std::vector<PreferenceOrder> merged;
  for (int i = 1; i <= game.players(); ++i) {
    PreferenceOrder order;
    bool in_block = false, block_done = false;
    for (Outcome o : game.preference(i)) {
      if (o.is_terminal()) {
        if (in_block) {
          in_block = false;
          block_done = true;
        }
        order.push_back(o);
        continue;
      }
      if (block_done) {
        throw Error(ErrorKind::Precondition, "merge undefined for this preference profile: player " +
                                                 std::to_string(i) + " interleaves cyclic and terminal outcomes");
      }
      if (!in_block) {
        in_block = true;
        order.push_back(Outcome::cyclic(1));
      }
    }
    // q = 0: c is unreachable; rank it last.
    if (form.cyclic_outcome_count() == 0) order.push_back(Outcome::cyclic(1));
    merged.push_back(std::move(order));
  }

  Contraction contraction = contract_terminal_sccs(form.graph());
  std::vector<int> owner(contraction.graph.vertex_count(), 0);
  for (Vertex v = 0; v < static_cast<Vertex>(form.vertex_count()); ++v) {
    const Vertex w = contraction.vertex_map[v];
    if (!contraction.graph.is_terminal(w)) owner[w] = form.owner(v);
  }
  std::optional<Vertex> initial;
  if (form.initial()) {
    initial = contraction.vertex_map[*form.initial()];
    if (contraction.graph.is_terminal(*initial)) {
      throw Error(ErrorKind::Precondition, "merge: the initial vertex lies in a terminal SCC");
    }
  }
  auto dg = std::make_shared<const GameForm>(std::move(contraction.graph), form.players(), std::move(owner),
                                             initial, Mode::DG);
  if (dg->terminal_outcome_count() != p) {
    throw Error(ErrorKind::LabelMismatch, "merge: terminal outcome count changed under contraction");
  }
  return Game(std::move(dg), std::move(merged));
}

}  // namespace neforge
