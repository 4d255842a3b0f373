#pragma once

#include <optional>
#include <string>

#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace neforge {

/// Graphviz digraph with one cluster per SCC, labeled terminal / interior /
/// transient.
std::string to_dot(const Digraph& g);

/// Same, with owners and outcome labels. With a profile, chosen edges are bold
/// and the edges of the realized play from `start` (default v_0) are red.
std::string to_dot(const GameForm& form, const StrategyProfile* profile = nullptr,
                   std::optional<Vertex> start = std::nullopt);

}  // namespace neforge
