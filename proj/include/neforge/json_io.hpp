#pragma once

#include <json.hpp>

#include "neforge/equilibrium.hpp"
#include "neforge/search.hpp"

namespace neforge {

// Ordered objects keep key order stable, so dumps are byte-identical.
using Json = nlohmann::ordered_json;

/// {"vertex_count", "players", "mode", "initial", "edges", "owner", "preferences"}.
/// vertex_count may be omitted on input (then 1 + the largest edge endpoint).
Json game_to_json(const Game& game);
GameDescription game_description_from_json(const Json& j);
Game game_from_json(const Json& j);

/// Map of vertex id to successor id, keys as decimal strings.
Json profile_to_json(const StrategyProfile& s);
StrategyProfile profile_from_json(const GameForm& form, const Json& j);

Json strategy_to_json(const Strategy& t);
Strategy strategy_from_json(const Json& j);

Json improvement_to_json(const Improvement& entry, Mode mode);
Improvement improvement_from_json(const Json& j, Mode mode);
Json certificate_to_json(const Certificate& certificate, Mode mode);
Certificate certificate_from_json(const Json& j, Mode mode);

/// Profile, outcome of the play from `start`, and per-player achievable sets.
Json ne_report(const Game& game, const StrategyProfile& s, Vertex start);

Json enum_spec_to_json(const EnumSpec& spec);
EnumSpec enum_spec_from_json(const Json& j);

Json report_to_json(const SearchReport& report);
SearchReport report_from_json(const Json& j);

/// Parses text, mapping JSON syntax errors to Error(Parse).
Json parse_json(const std::string& text);

}  // namespace neforge
