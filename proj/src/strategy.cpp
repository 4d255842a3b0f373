#include "neforge/strategy.hpp"

#include <limits>
#include <string>

#include "neforge/error.hpp"

namespace neforge {

void check_profile(const GameForm& form, const StrategyProfile& s) {
  const Digraph& g = form.graph();
  if (s.size() != g.vertex_count()) {
    throw Error(ErrorKind::InvalidProfile, "profile covers " + std::to_string(s.size()) + " vertices, game has " +
                                               std::to_string(g.vertex_count()));
  }
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    if (g.is_terminal(v)) {
      if (s[v] != -1) throw Error(ErrorKind::InvalidProfile, "terminal vertex " + std::to_string(v) + " has a choice");
      continue;
    }
    if (s[v] == -1) throw Error(ErrorKind::InvalidProfile, "vertex " + std::to_string(v) + " has no choice");
    if (s[v] < 0 || s[v] >= static_cast<Vertex>(g.vertex_count()) || !g.has_edge(v, s[v])) {
      throw Error(ErrorKind::InvalidProfile,
                  "choice " + std::to_string(v) + "->" + std::to_string(s[v]) + " is not an edge");
    }
  }
}

Strategy strategy_of(const GameForm& form, const StrategyProfile& s, int player) {
  Strategy t;
  for (Vertex v : form.vertices_of(player)) t[v] = s[v];
  return t;
}

StrategyProfile deviate(const GameForm& form, const StrategyProfile& s, int player, const Strategy& t) {
  const Digraph& g = form.graph();
  for (const auto& [v, w] : t) {
    if (v < 0 || v >= static_cast<Vertex>(g.vertex_count()) || form.owner(v) != player) {
      throw Error(ErrorKind::InvalidProfile,
                  "deviation of player " + std::to_string(player) + " covers foreign vertex " + std::to_string(v));
    }
    if (w < 0 || w >= static_cast<Vertex>(g.vertex_count()) || !g.has_edge(v, w)) {
      throw Error(ErrorKind::InvalidProfile, "deviation " + std::to_string(v) + "->" + std::to_string(w) +
                                                 " is not an edge");
    }
  }
  StrategyProfile out = s;
  for (Vertex v : form.vertices_of(player)) {
    auto it = t.find(v);
    if (it == t.end()) {
      throw Error(ErrorKind::InvalidProfile,
                  "deviation of player " + std::to_string(player) + " misses vertex " + std::to_string(v));
    }
    out.set(v, it->second);
  }
  return out;
}

Play resolve_play(const GameForm& form, const StrategyProfile& s, Vertex start) {
  check_profile(form, s);
  const Digraph& g = form.graph();
  if (start < 0 || start >= static_cast<Vertex>(g.vertex_count())) {
    throw Error(ErrorKind::InvalidProfile, "start vertex out of range");
  }
  std::vector<int> position(g.vertex_count(), -1);
  Play play;
  Vertex v = start;
  while (true) {
    if (position[v] != -1) {
      play.shape = Play::Shape::Lasso;
      play.cycle_start = static_cast<std::size_t>(position[v]);
      break;
    }
    position[v] = static_cast<int>(play.path.size());
    play.path.push_back(v);
    if (g.is_terminal(v)) break;
    v = s[v];
  }
  const Vertex last = play.path[play.shape == Play::Shape::Lasso ? play.cycle_start : play.path.size() - 1];
  const int id = form.component_outcome_id(form.scc().component_of[last]);
  play.outcome = form.outcome_at(id);
  return play;
}

ProfileSpace::ProfileSpace(const GameForm& form) : graph_(&form.graph()), movers_(form.graph().non_terminals()) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  for (Vertex v : movers_) {
    const std::uint64_t d = graph_->out_degree(v);
    if (size_ > limit / d) throw Error(ErrorKind::Unsupported, "profile space exceeds 2^63 profiles");
    size_ *= d;
  }
}

StrategyProfile ProfileSpace::at(std::uint64_t index) const {
  if (index >= size_) throw Error(ErrorKind::InvalidProfile, "profile index out of range");
  std::vector<Vertex> choice(graph_->vertex_count(), -1);
  for (auto it = movers_.rbegin(); it != movers_.rend(); ++it) {
    auto succ = graph_->successors(*it);
    choice[*it] = succ[index % succ.size()];
    index /= succ.size();
  }
  return StrategyProfile(std::move(choice));
}

std::uint64_t ProfileSpace::index_of(const StrategyProfile& s) const {
  std::uint64_t index = 0;
  for (Vertex v : movers_) {
    auto succ = graph_->successors(v);
    std::uint64_t digit = 0;
    while (digit < succ.size() && succ[digit] != s[v]) ++digit;
    if (digit == succ.size()) throw Error(ErrorKind::InvalidProfile, "profile does not follow the game's edges");
    index = index * succ.size() + digit;
  }
  return index;
}

bool ProfileSpace::next(StrategyProfile& s) const {
  for (auto it = movers_.rbegin(); it != movers_.rend(); ++it) {
    auto succ = graph_->successors(*it);
    std::size_t digit = 0;
    while (succ[digit] != s[*it]) ++digit;
    if (digit + 1 < succ.size()) {
      s.set(*it, succ[digit + 1]);
      return true;
    }
    s.set(*it, succ[0]);
  }
  return false;
}

std::vector<StrategyProfile> enumerate_profiles(const GameForm& form, std::uint64_t start_index) {
  ProfileSpace space(form);
  std::vector<StrategyProfile> out;
  if (start_index >= space.size()) return out;
  StrategyProfile s = space.at(start_index);
  do {
    out.push_back(s);
  } while (space.next(s));
  return out;
}

}  // namespace neforge
