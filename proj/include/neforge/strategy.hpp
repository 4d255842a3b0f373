#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "neforge/game.hpp"

namespace neforge {

/// One chosen successor per non-terminal vertex; -1 at terminal vertices.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(std::vector<Vertex> choice) : choice_(std::move(choice)) {}

  Vertex operator[](Vertex v) const noexcept { return choice_[v]; }
  void set(Vertex v, Vertex successor) { choice_[v] = successor; }
  std::span<const Vertex> choices() const noexcept { return choice_; }
  std::size_t size() const noexcept { return choice_.size(); }

  friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;

 private:
  std::vector<Vertex> choice_;
};

/// A player's stationary strategy: a choice at each vertex the player owns.
using Strategy = std::map<Vertex, Vertex>;

/// Throws Error(InvalidProfile) unless the profile is total on non-terminal
/// vertices and follows edges.
void check_profile(const GameForm& form, const StrategyProfile& s);

/// Restriction of `s` to the vertices owned by `player`.
Strategy strategy_of(const GameForm& form, const StrategyProfile& s, int player);

/// `s` with `player`'s choices replaced by `t`. `t` must be total on the
/// player's vertices and touch nothing else.
StrategyProfile deviate(const GameForm& form, const StrategyProfile& s, int player, const Strategy& t);

/// Finite representation of the play from a start vertex. For a lasso the
/// successor of the last path vertex is path[cycle_start].
struct Play {
  enum class Shape { Finite, Lasso };

  std::vector<Vertex> path;
  Shape shape = Shape::Finite;
  std::size_t cycle_start = 0;
  Outcome outcome;

  std::span<const Vertex> cycle() const noexcept {
    if (shape != Shape::Lasso) return {};
    return std::span<const Vertex>(path).subspan(cycle_start);
  }
};

Play resolve_play(const GameForm& form, const StrategyProfile& s, Vertex start);
inline Play resolve_play(const Game& game, const StrategyProfile& s, Vertex start) {
  return resolve_play(game.form(), s, start);
}

/// All pure stationary profiles of a form, indexed in lexicographic order of
/// (vertex id, successor id): the lowest non-terminal vertex is the most
/// significant digit.
class ProfileSpace {
 public:
  explicit ProfileSpace(const GameForm& form);

  /// Product of out-degrees of non-terminal vertices; throws Error(Unsupported) past 2^63.
  std::uint64_t size() const noexcept { return size_; }
  StrategyProfile at(std::uint64_t index) const;
  std::uint64_t index_of(const StrategyProfile& s) const;
  /// Advances to the next profile in order; false after the last one.
  bool next(StrategyProfile& s) const;

 private:
  const Digraph* graph_;
  std::vector<Vertex> movers_;
  std::uint64_t size_ = 1;
};

/// Profiles from `start_index` onwards, in ProfileSpace order.
std::vector<StrategyProfile> enumerate_profiles(const GameForm& form, std::uint64_t start_index = 0);

}  // namespace neforge
