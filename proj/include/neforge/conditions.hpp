#pragma once

#include <optional>
#include <utility>

#include "neforge/game.hpp"

namespace neforge {

/// Number of terminal outcomes player `player` ranks below c. DG mode only.
int k_c(const Game& game, int player);

/// Every player ranks c last. DG mode only.
bool check_condition_C(const Game& game);

struct C22Result {
  bool holds = true;
  /// Lexicographically smallest pair of distinct players with k_c >= 2.
  std::optional<std::pair<int, int>> witnesses;
};

/// DG mode only.
C22Result check_condition_C22(const Game& game);

/// Number of terminal outcomes player `player` ranks below c_j. DGMS mode only.
int k_interior(const Game& game, int player, int cyclic_index);

/// Worse: every interior outcome is ranked below every terminal outcome (the
/// reading under which (C') reduces to (C) for q = 1 and implies (C'22)).
/// Better: the literal opposite reading, every interior outcome above every terminal.
enum class CprimePolarity { Worse, Better };

/// DGMS mode only.
bool check_condition_Cprime(const Game& game, CprimePolarity polarity = CprimePolarity::Worse);

struct Cprime22Result {
  bool holds = true;
  /// ((i', j'), (i'', j'')) with i' < i'', each j the smallest index with k >= 2.
  std::optional<std::pair<std::pair<int, int>, std::pair<int, int>>> witnesses;
};

/// DGMS mode only.
Cprime22Result check_condition_Cprime22(const Game& game);

/// Merges c_1..c_q of a DGMS game into the single DG outcome c. Each player's
/// cyclic outcomes must form a contiguous block; c takes the block's place.
/// Terminal SCCs that are not sinks are contracted first (their plays are
/// terminal in DGMS but would be infinite in DG); see merge_vertex_map.
Game merge_cyclic_outcomes(const Game& game);

/// Vertex map from a DGMS game to its merged DG game (identity unless some
/// terminal SCC is not a sink).
std::vector<Vertex> merge_vertex_map(const GameForm& form);

}  // namespace neforge
