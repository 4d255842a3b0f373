#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neforge/digraph.hpp"

namespace neforge {

enum class Mode { DG, DGMS };

const char* to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Terminal(k) is a_k; Cyclic(j) is c_j, and in DG mode Cyclic(1) is the single
/// cyclic outcome c. Indices are 1-based.
struct Outcome {
  enum class Kind : std::uint8_t { Terminal, Cyclic };

  Kind kind = Kind::Terminal;
  int index = 1;

  static constexpr Outcome terminal(int k) { return {Kind::Terminal, k}; }
  static constexpr Outcome cyclic(int j = 1) { return {Kind::Cyclic, j}; }

  constexpr bool is_terminal() const noexcept { return kind == Kind::Terminal; }
  constexpr bool is_cyclic() const noexcept { return kind == Kind::Cyclic; }

  friend constexpr auto operator<=>(const Outcome&, const Outcome&) = default;
};

/// "a:<k>", "c" (DG) or "c:<j>" (DGMS).
std::string to_string(Outcome o, Mode mode);
/// Throws Error(ModeMismatch) when the token's form does not match the mode and
/// Error(Parse) when it is not an outcome token at all.
Outcome parse_outcome(std::string_view token, Mode mode);

/// Best first, strict.
using PreferenceOrder = std::vector<Outcome>;

/// A game without preferences: digraph, ownership, initial vertex and the
/// outcome structure derived from the SCC partition.
///
/// DG mode follows the sink/infinite-play reading: every sink vertex is its own
/// terminal outcome and every infinite play is c, including plays trapped in a
/// closed cycle. DGMS mode gives each terminal SCC an outcome a_k (a closed cycle
/// included) and each interior SCC an outcome c_j. Labels follow component order,
/// i.e. smallest member vertex.
class GameForm {
 public:
  /// `owner[v]` is ignored for terminal vertices. Throws Error on invalid input.
  GameForm(Digraph graph, int players, std::vector<int> owner, std::optional<Vertex> initial, Mode mode);

  const Digraph& graph() const noexcept { return graph_; }
  const SccPartition& scc() const noexcept { return scc_; }
  int players() const noexcept { return players_; }
  /// 0 for terminal vertices.
  int owner(Vertex v) const noexcept { return owner_[v]; }
  const std::vector<int>& owners() const noexcept { return owner_; }
  std::optional<Vertex> initial() const noexcept { return initial_; }
  Vertex initial_or_throw() const;
  Mode mode() const noexcept { return mode_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }

  int terminal_outcome_count() const noexcept { return p_; }
  int cyclic_outcome_count() const noexcept { return q_; }
  int outcome_count() const noexcept { return p_ + q_; }

  /// Dense id in [0, outcome_count()): terminals first, then cyclic outcomes.
  int outcome_id(Outcome o) const;
  Outcome outcome_at(int id) const;
  bool has_outcome(Outcome o) const noexcept;
  std::vector<Outcome> outcomes() const;

  /// Outcome id of plays that end up in this component, or -1 for transient ones.
  int component_outcome_id(int component) const noexcept { return component_outcome_[component]; }
  /// Components whose plays are infinite and yield a cyclic outcome.
  bool component_is_cyclic_outcome(int component) const noexcept {
    return component_outcome_[component] >= p_;
  }
  /// Vertices of the outcome's carrier: the sink (DG terminal), the terminal SCC
  /// (DGMS terminal) or the union of cyclic components.
  std::vector<Vertex> carrier(int outcome_id) const;

  std::vector<Vertex> vertices_of(int player) const;

 private:
  Digraph graph_;
  SccPartition scc_;
  int players_;
  std::vector<int> owner_;
  std::optional<Vertex> initial_;
  Mode mode_;
  int p_ = 0;
  int q_ = 0;
  std::vector<int> component_outcome_;
};

/// A game form together with one strict preference order per player.
class Game {
 public:
  /// Throws Error(PreferenceNotPermutation) unless every order is an exact
  /// permutation of the form's outcomes.
  Game(std::shared_ptr<const GameForm> form, std::vector<PreferenceOrder> preferences);

  const GameForm& form() const noexcept { return *form_; }
  const std::shared_ptr<const GameForm>& form_ptr() const noexcept { return form_; }
  const Digraph& graph() const noexcept { return form_->graph(); }
  int players() const noexcept { return form_->players(); }
  Mode mode() const noexcept { return form_->mode(); }

  const PreferenceOrder& preference(int player) const { return preferences_.at(player - 1); }
  const std::vector<PreferenceOrder>& preferences() const noexcept { return preferences_; }

  /// 0 is best.
  int rank(int player, int outcome_id) const noexcept { return ranks_[player - 1][outcome_id]; }
  int rank(int player, Outcome o) const { return rank(player, form_->outcome_id(o)); }
  /// Strict preference of `player` for `a` over `b`.
  bool prefers(int player, Outcome a, Outcome b) const { return rank(player, a) < rank(player, b); }

 private:
  std::shared_ptr<const GameForm> form_;
  std::vector<PreferenceOrder> preferences_;
  std::vector<std::vector<int>> ranks_;
};

/// Unvalidated game record, the shape of the JSON schema.
struct GameDescription {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  int players = 0;
  std::map<Vertex, int> owner;
  std::optional<Vertex> initial;
  Mode mode = Mode::DG;
  /// Outcome tokens per player, best first.
  std::vector<std::vector<std::string>> preferences;
};

/// Returns normally iff the description is a well-formed game. Diagnostics are
/// distinguished by ErrorKind: OwnershipGap, InitialTerminal,
/// PreferenceNotPermutation, LabelMismatch, ModeMismatch (plus InvalidGraph).
void validate(const GameDescription& description);
Game make_game(const GameDescription& description);
GameDescription describe(const Game& game);

}  // namespace neforge
