#include "neforge/game.hpp"

#include <algorithm>
#include <charconv>

#include "neforge/error.hpp"

namespace neforge {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGraph: return "invalid graph";
    case ErrorKind::OwnershipGap: return "ownership gap";
    case ErrorKind::InitialTerminal: return "initial vertex is terminal";
    case ErrorKind::PreferenceNotPermutation: return "preference not a permutation";
    case ErrorKind::LabelMismatch: return "label/SCC mismatch";
    case ErrorKind::ModeMismatch: return "mode/q mismatch";
    case ErrorKind::InvalidProfile: return "invalid strategy profile";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

const char* to_string(Mode mode) { return mode == Mode::DG ? "dg" : "dgms"; }

Mode parse_mode(std::string_view text) {
  if (text == "dg") return Mode::DG;
  if (text == "dgms") return Mode::DGMS;
  throw Error(ErrorKind::Parse, "unknown mode \"" + std::string(text) + "\" (expected dg or dgms)");
}

std::string to_string(Outcome o, Mode mode) {
  if (o.is_terminal()) return "a:" + std::to_string(o.index);
  if (mode == Mode::DG) return "c";
  return "c:" + std::to_string(o.index);
}

Outcome parse_outcome(std::string_view token, Mode mode) {
  auto parse_index = [&](std::string_view digits) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || value < 1) {
      throw Error(ErrorKind::Parse, "bad outcome token \"" + std::string(token) + "\"");
    }
    return value;
  };
  if (token.starts_with("a:")) return Outcome::terminal(parse_index(token.substr(2)));
  if (token == "c") {
    if (mode != Mode::DG) throw Error(ErrorKind::ModeMismatch, "outcome \"c\" used in a DGMS game; write c:<j>");
    return Outcome::cyclic(1);
  }
  if (token.starts_with("c:")) {
    if (mode != Mode::DGMS) {
      throw Error(ErrorKind::ModeMismatch, "outcome \"" + std::string(token) + "\" used in a DG game; write c");
    }
    return Outcome::cyclic(parse_index(token.substr(2)));
  }
  throw Error(ErrorKind::Parse, "bad outcome token \"" + std::string(token) + "\"");
}

GameForm::GameForm(Digraph graph, int players, std::vector<int> owner, std::optional<Vertex> initial, Mode mode)
    : graph_(std::move(graph)), players_(players), owner_(std::move(owner)), initial_(initial), mode_(mode) {
  const auto n = static_cast<Vertex>(graph_.vertex_count());
  if (players_ < 1) throw Error(ErrorKind::OwnershipGap, "a game needs at least one player");
  if (owner_.size() != graph_.vertex_count()) {
    throw Error(ErrorKind::OwnershipGap, "owner table does not cover every vertex");
  }
  for (Vertex v = 0; v < n; ++v) {
    if (graph_.is_terminal(v)) {
      owner_[v] = 0;
    } else if (owner_[v] < 1 || owner_[v] > players_) {
      throw Error(ErrorKind::OwnershipGap, "non-terminal vertex " + std::to_string(v) + " has no owner in 1.." +
                                               std::to_string(players_));
    }
  }
  if (initial_) {
    if (*initial_ < 0 || *initial_ >= n) throw Error(ErrorKind::InvalidGraph, "initial vertex out of range");
    if (graph_.is_terminal(*initial_)) {
      throw Error(ErrorKind::InitialTerminal, "initial vertex " + std::to_string(*initial_) + " is terminal");
    }
  }

  scc_ = scc_decompose(graph_);
  const std::size_t count = scc_.size();
  component_outcome_.assign(count, -1);
  std::vector<int> cyclic_components;
  for (std::size_t c = 0; c < count; ++c) {
    const bool sink = scc_.scc_class[c] == SccClass::Terminal && !scc_.cyclic[c];
    if (mode_ == Mode::DG) {
      if (sink) {
        component_outcome_[c] = p_++;
      } else if (scc_.cyclic[c]) {
        cyclic_components.push_back(static_cast<int>(c));
      }
    } else if (scc_.scc_class[c] == SccClass::Terminal) {
      component_outcome_[c] = p_++;
    } else if (scc_.scc_class[c] == SccClass::Interior) {
      cyclic_components.push_back(static_cast<int>(c));
    }
  }
  if (mode_ == Mode::DG) {
    q_ = 1;
    for (int c : cyclic_components) component_outcome_[c] = p_;
  } else {
    q_ = static_cast<int>(cyclic_components.size());
    for (int j = 0; j < q_; ++j) component_outcome_[cyclic_components[j]] = p_ + j;
  }
  if (p_ + q_ > 64) throw Error(ErrorKind::Unsupported, "games with more than 64 outcomes are not supported");
}

Vertex GameForm::initial_or_throw() const {
  if (!initial_) throw Error(ErrorKind::Precondition, "game has no initial vertex");
  return *initial_;
}

int GameForm::outcome_id(Outcome o) const {
  if (!has_outcome(o)) throw Error(ErrorKind::LabelMismatch, "outcome " + to_string(o, mode_) + " does not exist");
  return o.is_terminal() ? o.index - 1 : p_ + o.index - 1;
}

Outcome GameForm::outcome_at(int id) const {
  return id < p_ ? Outcome::terminal(id + 1) : Outcome::cyclic(id - p_ + 1);
}

bool GameForm::has_outcome(Outcome o) const noexcept {
  if (o.index < 1) return false;
  return o.is_terminal() ? o.index <= p_ : o.index <= q_;
}

std::vector<Outcome> GameForm::outcomes() const {
  std::vector<Outcome> out;
  for (int id = 0; id < outcome_count(); ++id) out.push_back(outcome_at(id));
  return out;
}

std::vector<Vertex> GameForm::carrier(int outcome_id) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    if (component_outcome_[scc_.component_of[v]] == outcome_id) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> GameForm::vertices_of(int player) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    if (owner_[v] == player) out.push_back(v);
  }
  return out;
}

Game::Game(std::shared_ptr<const GameForm> form, std::vector<PreferenceOrder> preferences)
    : form_(std::move(form)), preferences_(std::move(preferences)) {
  const int players = form_->players();
  const int k = form_->outcome_count();
  if (static_cast<int>(preferences_.size()) != players) {
    throw Error(ErrorKind::PreferenceNotPermutation,
                "expected " + std::to_string(players) + " preference orders, got " + std::to_string(preferences_.size()));
  }
  ranks_.assign(players, std::vector<int>(k, -1));
  for (int i = 0; i < players; ++i) {
    const PreferenceOrder& order = preferences_[i];
    const std::string who = "player " + std::to_string(i + 1);
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (!form_->has_outcome(order[r])) {
        throw Error(ErrorKind::LabelMismatch,
                    who + " ranks " + to_string(order[r], form_->mode()) + ", which is not an outcome of this game");
      }
      int& slot = ranks_[i][form_->outcome_id(order[r])];
      if (slot != -1) {
        throw Error(ErrorKind::PreferenceNotPermutation,
                    who + " ranks " + to_string(order[r], form_->mode()) + " twice");
      }
      slot = static_cast<int>(r);
    }
    if (static_cast<int>(order.size()) != k) {
      throw Error(ErrorKind::PreferenceNotPermutation,
                  who + " ranks " + std::to_string(order.size()) + " outcomes, the game has " + std::to_string(k));
    }
  }
}

namespace {

Game build(const GameDescription& d) {
  const auto n = static_cast<Vertex>(d.vertex_count);
  Digraph graph(d.vertex_count, d.edges);
  std::vector<int> owner(d.vertex_count, 0);
  for (const auto& [v, player] : d.owner) {
    if (v < 0 || v >= n) throw Error(ErrorKind::OwnershipGap, "owner entry for unknown vertex " + std::to_string(v));
    owner[v] = player;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!graph.is_terminal(v) && !d.owner.contains(v)) {
      throw Error(ErrorKind::OwnershipGap, "non-terminal vertex " + std::to_string(v) + " has no owner");
    }
  }
  auto form = std::make_shared<const GameForm>(std::move(graph), d.players, std::move(owner), d.initial, d.mode);

  std::vector<PreferenceOrder> prefs;
  for (const auto& tokens : d.preferences) {
    PreferenceOrder order;
    for (const auto& token : tokens) order.push_back(parse_outcome(token, d.mode));
    prefs.push_back(std::move(order));
  }
  return Game(std::move(form), std::move(prefs));
}

}  // namespace

void validate(const GameDescription& description) { (void)build(description); }

Game make_game(const GameDescription& description) { return build(description); }

GameDescription describe(const Game& game) {
  const GameForm& form = game.form();
  GameDescription d;
  d.vertex_count = form.vertex_count();
  d.edges = form.graph().edges();
  d.players = form.players();
  for (Vertex v = 0; v < static_cast<Vertex>(form.vertex_count()); ++v) {
    if (!form.graph().is_terminal(v)) d.owner[v] = form.owner(v);
  }
  d.initial = form.initial();
  d.mode = form.mode();
  for (const auto& order : game.preferences()) {
    std::vector<std::string> tokens;
    for (Outcome o : order) tokens.push_back(to_string(o, d.mode));
    d.preferences.push_back(std::move(tokens));
  }
  return d;
}

}  // namespace neforge
