#pragma once

#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace neforge {

/// Standard backward induction on an acyclic game with any number of players.
/// Each owner picks the successor whose induced outcome it ranks best; equal
/// outcomes break by smallest successor id. The result is a uniform NE.
/// Throws Error(Precondition) on a cyclic digraph.
StrategyProfile backward_induction(const Game& game);

/// Returns a NE at the initial vertex of a two-person DG or DGMS game. Acyclic
/// games get the backward-induction profile. Otherwise a candidate built over
/// the condensation is refined by best-response dynamics and checked with
/// is_ne; if no candidate passes, the profile space is scanned in order.
/// The result need not be a uniform NE.
StrategyProfile solve_two_person(const Game& game);

}  // namespace neforge
