#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "neforge/game.hpp"
#include "neforge/strategy.hpp"

namespace neforge {

/// Bit k set iff the outcome with dense id k is a member.
using OutcomeMask = std::uint64_t;

/// One-player deviation analysis over a fixed game form. Holds scratch buffers,
/// so an instance must not be shared between threads.
///
/// For a deviating player the remaining players' choices are frozen, leaving a
/// one-player graph. A terminal outcome is achievable iff its carrier is
/// reachable there; a cyclic outcome iff the player can reach a part of a
/// cyclic component from which the play can be kept inside that component
/// forever (greatest fixpoint).
class Analyzer {
 public:
  explicit Analyzer(const GameForm& form);

  const GameForm& form() const noexcept { return *form_; }

  int play_outcome(std::span<const Vertex> choice, Vertex start);
  OutcomeMask achievable(std::span<const Vertex> choice, int player, Vertex start);
  /// A stationary strategy for `player` under which the play from `start`
  /// yields `outcome_id`; empty when that outcome is not achievable.
  std::optional<Strategy> realize(std::span<const Vertex> choice, int player, Vertex start, int outcome_id);

 private:
  void reach(std::span<const Vertex> choice, int player, Vertex start);
  void safety(std::span<const Vertex> choice, int player);
  void next_stamp();

  const GameForm* form_;
  int p_;
  std::vector<int> vertex_outcome_;
  std::vector<int> component_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::vector<Vertex> queue_;
  std::vector<char> alive_;
};

std::vector<Outcome> outcomes_in(const GameForm& form, OutcomeMask mask);

/// Sorted (terminal outcomes first, then cyclic, by index).
std::vector<Outcome> achievable_outcomes(const Game& game, const StrategyProfile& s, int player, Vertex start);

bool is_ne(const Game& game, const StrategyProfile& s, Vertex start);
/// At the initial vertex.
bool is_ne(const Game& game, const StrategyProfile& s);
/// Nash equilibrium from every non-terminal start vertex.
bool is_une(const Game& game, const StrategyProfile& s);

/// A unilateral deviation that strictly improves `player`'s outcome.
struct Improvement {
  std::uint64_t profile_index = 0;
  Vertex start = 0;
  int player = 0;
  Strategy deviation;
  Outcome improved;

  friend bool operator==(const Improvement&, const Improvement&) = default;
};

/// One improvement per profile, in profile order.
using Certificate = std::vector<Improvement>;

/// Lowest-numbered player with an improvement, deviating to that player's most
/// preferred achievable outcome.
std::optional<Improvement> find_improvement(const Game& game, const StrategyProfile& s, Vertex start);

struct NeSearch {
  std::optional<StrategyProfile> profile;
  std::uint64_t index = 0;
  /// Filled when no equilibrium exists.
  Certificate refutation;
};

/// First profile (in ProfileSpace order) that is a NE at the initial vertex.
NeSearch find_ne(const Game& game);
/// First uniform NE; otherwise one (start, improvement) witness per profile.
NeSearch find_une(const Game& game);

enum class CertificateKind { NeFree, UneFree };

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

/// Replays every cited deviation with resolve_play (independent of the
/// Analyzer) and checks that the certificate covers every profile.
CertificateCheck verify_certificate(const Game& game, const Certificate& certificate, CertificateKind kind);

struct NeEntry {
  StrategyProfile profile;
  Outcome outcome;
};

struct NeInventory {
  std::vector<NeEntry> terminal_ne;
  std::vector<NeEntry> cyclic_ne;
  bool vt_reachable_from_initial = false;
};

NeInventory ne_inventory(const Game& game);

}  // namespace neforge
