#include "neforge/equilibrium.hpp"

#include <algorithm>
#include <limits>

#include "neforge/error.hpp"

namespace neforge {

Analyzer::Analyzer(const GameForm& form)
    : form_(&form),
      p_(form.terminal_outcome_count()),
      vertex_outcome_(form.vertex_count()),
      component_(form.scc().component_of),
      seen_(form.vertex_count(), 0),
      alive_(form.vertex_count(), 0) {
  for (Vertex v = 0; v < static_cast<Vertex>(form.vertex_count()); ++v) {
    vertex_outcome_[v] = form.component_outcome_id(component_[v]);
  }
  queue_.reserve(form.vertex_count());
}

void Analyzer::next_stamp() {
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0u);
    stamp_ = 1;
  }
}

int Analyzer::play_outcome(std::span<const Vertex> choice, Vertex start) {
  const Digraph& g = form_->graph();
  next_stamp();
  Vertex v = start;
  while (seen_[v] != stamp_ && !g.is_terminal(v)) {
    seen_[v] = stamp_;
    v = choice[v];
  }
  // Either a sink or the first repeated vertex, which lies on the cycle.
  return vertex_outcome_[v];
}

void Analyzer::reach(std::span<const Vertex> choice, int player, Vertex start) {
  const Digraph& g = form_->graph();
  next_stamp();
  queue_.clear();
  queue_.push_back(start);
  seen_[start] = stamp_;
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const Vertex v = queue_[head];
    if (g.is_terminal(v)) continue;
    if (form_->owner(v) == player) {
      for (Vertex w : g.successors(v)) {
        if (seen_[w] != stamp_) {
          seen_[w] = stamp_;
          queue_.push_back(w);
        }
      }
    } else if (seen_[choice[v]] != stamp_) {
      seen_[choice[v]] = stamp_;
      queue_.push_back(choice[v]);
    }
  }
}

void Analyzer::safety(std::span<const Vertex> choice, int player) {
  const Digraph& g = form_->graph();
  const auto n = static_cast<Vertex>(g.vertex_count());
  for (Vertex v = 0; v < n; ++v) alive_[v] = vertex_outcome_[v] >= p_;
  auto stays = [&](Vertex v, Vertex w) { return alive_[w] && component_[w] == component_[v]; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive_[v]) continue;
      bool keep = false;
      if (form_->owner(v) == player) {
        for (Vertex w : g.successors(v)) {
          if (stays(v, w)) {
            keep = true;
            break;
          }
        }
      } else {
        keep = stays(v, choice[v]);
      }
      if (!keep) {
        alive_[v] = 0;
        changed = true;
      }
    }
  }
}

OutcomeMask Analyzer::achievable(std::span<const Vertex> choice, int player, Vertex start) {
  reach(choice, player, start);
  OutcomeMask mask = 0;
  bool cyclic_reached = false;
  for (Vertex v : queue_) {
    const int id = vertex_outcome_[v];
    if (id < 0) continue;
    if (id < p_) {
      mask |= OutcomeMask{1} << id;
    } else {
      cyclic_reached = true;
    }
  }
  if (!cyclic_reached) return mask;
  // queue_ survives safety(): it only touches alive_.
  safety(choice, player);
  for (Vertex v : queue_) {
    if (alive_[v]) mask |= OutcomeMask{1} << vertex_outcome_[v];
  }
  return mask;
}

std::optional<Strategy> Analyzer::realize(std::span<const Vertex> choice, int player, Vertex start,
                                          int outcome_id) {
  const Digraph& g = form_->graph();
  const auto n = static_cast<Vertex>(g.vertex_count());
  const bool cyclic = outcome_id >= p_;
  std::vector<char> target(n, 0);
  if (cyclic) safety(choice, player);
  for (Vertex v = 0; v < n; ++v) {
    target[v] = vertex_outcome_[v] == outcome_id && (!cyclic || alive_[v]);
  }

  // Backward BFS over the one-player graph.
  std::vector<std::vector<Vertex>> preds(n);
  for (Vertex v = 0; v < n; ++v) {
    if (g.is_terminal(v)) continue;
    if (form_->owner(v) == player) {
      for (Vertex w : g.successors(v)) preds[w].push_back(v);
    } else {
      preds[choice[v]].push_back(v);
    }
  }
  constexpr int unreachable = std::numeric_limits<int>::max();
  std::vector<int> dist(n, unreachable);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (target[v]) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex w = queue[head];
    for (Vertex v : preds[w]) {
      if (dist[v] == unreachable) {
        dist[v] = dist[w] + 1;
        queue.push_back(v);
      }
    }
  }
  if (dist[start] == unreachable) return std::nullopt;

  Strategy t;
  for (Vertex v : form_->vertices_of(player)) {
    Vertex pick = choice[v];
    if (target[v]) {
      if (cyclic) {
        for (Vertex w : g.successors(v)) {
          if (alive_[w] && component_[w] == component_[v]) {
            pick = w;
            break;
          }
        }
      }
    } else if (dist[v] != unreachable) {
      for (Vertex w : g.successors(v)) {
        if (dist[w] == dist[v] - 1) {
          pick = w;
          break;
        }
      }
    }
    t[v] = pick;
  }
  return t;
}

std::vector<Outcome> outcomes_in(const GameForm& form, OutcomeMask mask) {
  std::vector<Outcome> out;
  for (int id = 0; id < form.outcome_count(); ++id) {
    if (mask >> id & 1) out.push_back(form.outcome_at(id));
  }
  return out;
}

namespace {

void check_start(const GameForm& form, Vertex start) {
  if (start < 0 || start >= static_cast<Vertex>(form.vertex_count())) {
    throw Error(ErrorKind::InvalidProfile, "start vertex " + std::to_string(start) + " out of range");
  }
}

OutcomeMask better_than(const Game& game, int player, int outcome_id) {
  OutcomeMask mask = 0;
  const int r = game.rank(player, outcome_id);
  for (int id = 0; id < game.form().outcome_count(); ++id) {
    if (game.rank(player, id) < r) mask |= OutcomeMask{1} << id;
  }
  return mask;
}

bool is_ne_with(Analyzer& analyzer, const Game& game, std::span<const Vertex> choice, Vertex start) {
  const int current = analyzer.play_outcome(choice, start);
  for (int i = 1; i <= game.players(); ++i) {
    if (analyzer.achievable(choice, i, start) & better_than(game, i, current)) return false;
  }
  return true;
}

std::optional<Improvement> improvement_with(Analyzer& analyzer, const Game& game, std::span<const Vertex> choice,
                                            Vertex start) {
  const int current = analyzer.play_outcome(choice, start);
  for (int i = 1; i <= game.players(); ++i) {
    const OutcomeMask better = analyzer.achievable(choice, i, start) & better_than(game, i, current);
    if (!better) continue;
    int best = -1;
    for (int id = 0; id < game.form().outcome_count(); ++id) {
      if ((better >> id & 1) && (best == -1 || game.rank(i, id) < game.rank(i, best))) best = id;
    }
    auto deviation = analyzer.realize(choice, i, start, best);
    if (!deviation) throw Error(ErrorKind::Precondition, "internal: achievable outcome could not be realized");
    return Improvement{0, start, i, std::move(*deviation), game.form().outcome_at(best)};
  }
  return std::nullopt;
}

}  // namespace

std::vector<Outcome> achievable_outcomes(const Game& game, const StrategyProfile& s, int player, Vertex start) {
  check_profile(game.form(), s);
  check_start(game.form(), start);
  Analyzer analyzer(game.form());
  return outcomes_in(game.form(), analyzer.achievable(s.choices(), player, start));
}

bool is_ne(const Game& game, const StrategyProfile& s, Vertex start) {
  check_profile(game.form(), s);
  check_start(game.form(), start);
  Analyzer analyzer(game.form());
  return is_ne_with(analyzer, game, s.choices(), start);
}

bool is_ne(const Game& game, const StrategyProfile& s) { return is_ne(game, s, game.form().initial_or_throw()); }

bool is_une(const Game& game, const StrategyProfile& s) {
  check_profile(game.form(), s);
  Analyzer analyzer(game.form());
  for (Vertex v : game.graph().non_terminals()) {
    if (!is_ne_with(analyzer, game, s.choices(), v)) return false;
  }
  return true;
}

std::optional<Improvement> find_improvement(const Game& game, const StrategyProfile& s, Vertex start) {
  check_profile(game.form(), s);
  check_start(game.form(), start);
  Analyzer analyzer(game.form());
  auto found = improvement_with(analyzer, game, s.choices(), start);
  if (found) found->profile_index = ProfileSpace(game.form()).index_of(s);
  return found;
}

NeSearch find_ne(const Game& game) {
  const Vertex start = game.form().initial_or_throw();
  ProfileSpace space(game.form());
  Analyzer analyzer(game.form());
  NeSearch result;
  StrategyProfile s = space.at(0);
  std::uint64_t index = 0;
  do {
    auto improvement = improvement_with(analyzer, game, s.choices(), start);
    if (!improvement) {
      result.profile = s;
      result.index = index;
      result.refutation.clear();
      return result;
    }
    improvement->profile_index = index;
    result.refutation.push_back(std::move(*improvement));
    ++index;
  } while (space.next(s));
  return result;
}

NeSearch find_une(const Game& game) {
  ProfileSpace space(game.form());
  Analyzer analyzer(game.form());
  const std::vector<Vertex> starts = game.graph().non_terminals();
  NeSearch result;
  StrategyProfile s = space.at(0);
  std::uint64_t index = 0;
  do {
    std::optional<Improvement> witness;
    for (Vertex v : starts) {
      witness = improvement_with(analyzer, game, s.choices(), v);
      if (witness) break;
    }
    if (!witness) {
      result.profile = s;
      result.index = index;
      result.refutation.clear();
      return result;
    }
    witness->profile_index = index;
    result.refutation.push_back(std::move(*witness));
    ++index;
  } while (space.next(s));
  return result;
}

CertificateCheck verify_certificate(const Game& game, const Certificate& certificate, CertificateKind kind) {
  auto fail = [](std::string reason) { return CertificateCheck{false, std::move(reason)}; };
  const GameForm& form = game.form();
  ProfileSpace space(form);
  if (certificate.size() != space.size()) {
    return fail("certificate has " + std::to_string(certificate.size()) + " entries, game has " +
                std::to_string(space.size()) + " profiles");
  }
  std::optional<Vertex> initial = form.initial();
  if (kind == CertificateKind::NeFree && !initial) return fail("NE-freeness needs an initial vertex");
  for (std::uint64_t k = 0; k < certificate.size(); ++k) {
    const Improvement& entry = certificate[k];
    const std::string where = "entry " + std::to_string(k) + ": ";
    if (entry.profile_index != k) return fail(where + "profile index out of order");
    if (entry.player < 1 || entry.player > form.players()) return fail(where + "bad player");
    if (entry.start < 0 || entry.start >= static_cast<Vertex>(form.vertex_count()) ||
        form.graph().is_terminal(entry.start)) {
      return fail(where + "bad start vertex");
    }
    if (kind == CertificateKind::NeFree && entry.start != *initial) return fail(where + "start is not the initial vertex");
    if (!form.has_outcome(entry.improved)) return fail(where + "unknown outcome");
    const StrategyProfile s = space.at(k);
    StrategyProfile deviated;
    try {
      deviated = deviate(form, s, entry.player, entry.deviation);
    } catch (const Error& e) {
      return fail(where + e.what());
    }
    const Outcome before = resolve_play(form, s, entry.start).outcome;
    const Outcome after = resolve_play(form, deviated, entry.start).outcome;
    if (after != entry.improved) return fail(where + "replayed deviation does not reach the cited outcome");
    if (!game.prefers(entry.player, after, before)) return fail(where + "deviation is not a strict improvement");
  }
  return {};
}

NeInventory ne_inventory(const Game& game) {
  const GameForm& form = game.form();
  const Vertex start = form.initial_or_throw();
  NeInventory inventory;
  const std::vector<bool> reach = reachable_from(form.graph(), start);
  for (Vertex v = 0; v < static_cast<Vertex>(form.vertex_count()); ++v) {
    const int id = form.component_outcome_id(form.scc().component_of[v]);
    if (reach[v] && id >= 0 && id < form.terminal_outcome_count()) inventory.vt_reachable_from_initial = true;
  }
  ProfileSpace space(form);
  Analyzer analyzer(form);
  StrategyProfile s = space.at(0);
  do {
    if (!is_ne_with(analyzer, game, s.choices(), start)) continue;
    const Outcome o = form.outcome_at(analyzer.play_outcome(s.choices(), start));
    (o.is_terminal() ? inventory.terminal_ne : inventory.cyclic_ne).push_back({s, o});
  } while (space.next(s));
  return inventory;
}

}  // namespace neforge
