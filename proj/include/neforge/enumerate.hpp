#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "neforge/game.hpp"

namespace neforge {

/// Hypothesis filters applied to enumerated games (bit flags).
enum Filter : unsigned {
  kRequireC = 1u << 0,
  kRequireC22 = 1u << 1,
  kRequireCprime = 1u << 2,
  kRequireCprime22 = 1u << 3,
  kRequireBidirected = 1u << 4,
};

struct Shard {
  std::uint64_t index = 0;
  std::uint64_t total = 1;

  friend bool operator==(const Shard&, const Shard&) = default;
};

/// Bounds of an exhaustive scan over labeled games.
///
/// A stratum has `m` non-terminal vertices 0..m-1 (vertex 0 is the initial
/// vertex) and `t` sinks m..m+t-1. Every non-terminal vertex picks a non-empty
/// successor set (self-loops allowed) of size at most `max_outdeg`, every
/// non-terminal vertex gets an owner, and every player a strict order of the
/// form's outcomes.
struct EnumSpec {
  int players = 2;
  int min_nonterminal = 1;
  int max_nonterminal = 1;
  int min_terminals = 0;
  int max_terminals = 2;
  int max_outdeg = 2;
  /// DGMS only: skip forms with more interior SCCs; -1 means no cap.
  int max_interior = -1;
  Mode mode = Mode::DG;
  unsigned filters = 0;
  Shard shard;
  /// Keep one game form per class under relabeling of vertices 1..m-1 and of
  /// the sinks (owners move with their vertices).
  bool canonical_dedup = false;

  friend bool operator==(const EnumSpec&, const EnumSpec&) = default;
};

/// Throws Error(Precondition) on empty/negative bounds, a bad shard, or filters
/// that do not apply to the mode.
void validate(const EnumSpec& spec);

/// A game form in the stream with the global indices of its games:
/// [first_index, first_index + game_count). Within a form, games are ordered by
/// preference profile: player 1's permutation index is the most significant
/// digit, each permutation lexicographic over outcome ids.
struct FormSlot {
  std::shared_ptr<const GameForm> form;
  std::uint64_t first_index = 0;
  std::uint64_t game_count = 0;
  std::uint64_t form_ordinal = 0;
};

/// Visits every form within bounds in stream order (ignores shard and filters).
void for_each_form(const EnumSpec& spec, const std::function<void(const FormSlot&)>& visit);

/// Total number of games within bounds (all shards, before filters).
std::uint64_t count_games(const EnumSpec& spec);

/// The strict order with the given lexicographic permutation index over
/// outcome ids 0..k-1.
PreferenceOrder preference_from_index(const GameForm& form, std::uint64_t permutation_index);

/// Game number `offset` of a form slot.
Game game_at(const FormSlot& slot, std::uint64_t offset);

/// True iff the game satisfies every filter in `filters`.
bool passes_filters(const Game& game, unsigned filters);

/// Streams the games of the spec's shard that pass its filters, in global index order.
void for_each_game(const EnumSpec& spec, const std::function<void(std::uint64_t index, const Game&)>& visit);
std::vector<Game> enumerate_games(const EnumSpec& spec);

}  // namespace neforge
