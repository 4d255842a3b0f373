#pragma once

#include <map>
#include <optional>
#include <span>

#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace neforge {

/// The subgame on V \ {v_0}: vertices above v_0 shift down by one, owners and
/// preferences are kept, and there is no initial vertex. Throws
/// Error(Precondition) when some vertex would become a sink, and for DGMS games
/// unless v_0 is transient (otherwise the outcome set could change).
Game remove_initial(const Game& game);

/// Fixes the choices at `order` one by one: each owner takes the successor
/// whose play (under the profile built so far) it ranks best, ties to the
/// smallest successor id. Every other vertex keeps its choice in `partial`,
/// which must be a valid profile already (the entries being set are ignored).
StrategyProfile extend_by_best_reply(const Game& game, StrategyProfile partial, std::span<const Vertex> order);

/// Lifts a uniform NE of remove_initial(game) to the full game by letting
/// v_0's owner pick a best move. Throws Error(Precondition) unless
/// `une_of_subgame` is a uniform NE of the subgame.
StrategyProfile extend_une_to_ne(const Game& game, const StrategyProfile& une_of_subgame);

struct Prefix {
  /// Acyclic. Its sinks are glued onto core vertices via `attach`.
  Digraph graph;
  std::map<Vertex, Vertex> attach;
  /// Owner of each non-sink prefix vertex.
  std::map<Vertex, int> owner;
  /// Defaults to the smallest source of the prefix.
  std::optional<Vertex> initial;
};

/// Glues an acyclic prefix in front of a core game. The new initial vertex is
/// 0, the remaining non-sink prefix vertices follow in id order, and the core
/// comes last, unchanged. Preferences are the core's. Throws
/// Error(Precondition) on an empty or cyclic prefix, an unattached prefix sink,
/// or an attachment that is not a prefix sink / core vertex.
Game extend_with_prefix(const Game& core, const Prefix& prefix);

/// Core vertex v sits at v + prefix_core_offset(prefix) in the extended game.
Vertex prefix_core_offset(const Prefix& prefix);

}  // namespace neforge
