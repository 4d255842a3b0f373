#include "neforge/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

#include "neforge/conditions.hpp"
#include "neforge/error.hpp"

namespace neforge {

void validate(const EnumSpec& spec) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Precondition, "enumeration spec: " + what); };
  if (spec.players < 1) fail("players must be positive");
  if (spec.min_nonterminal < 1 || spec.max_nonterminal < spec.min_nonterminal) {
    fail("non-terminal bounds must satisfy 1 <= min <= max");
  }
  if (spec.min_terminals < 0 || spec.max_terminals < spec.min_terminals) {
    fail("terminal bounds must satisfy 0 <= min <= max");
  }
  if (spec.max_outdeg < 1) fail("max out-degree must be positive");
  if (spec.max_nonterminal + spec.max_terminals > 30) fail("at most 30 vertices are supported");
  if (spec.shard.total < 1 || spec.shard.index >= spec.shard.total) fail("shard index must be below shard total");
  if (spec.mode == Mode::DG && (spec.filters & (kRequireCprime | kRequireCprime22))) {
    fail("C' and C'22 filters apply to DGMS games only");
  }
  if (spec.mode == Mode::DGMS && (spec.filters & (kRequireC | kRequireC22))) {
    fail("C and C22 filters apply to DG games only");
  }
  if (spec.mode == Mode::DG && spec.max_interior != -1) fail("max_interior applies to DGMS games only");
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  if (b != 0 && a > limit / b) throw Error(ErrorKind::Unsupported, "game count exceeds 2^62");
  return a * b;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f = checked_mul(f, static_cast<std::uint64_t>(i));
  return f;
}

using Mask = std::uint32_t;

struct Stratum {
  int m;
  int t;
  std::vector<Mask> successor_sets;
  // Relabelings that fix vertex 0 and keep non-terminals and sinks apart.
  std::vector<std::vector<int>> relabelings;
};

Stratum make_stratum(const EnumSpec& spec, int m, int t) {
  Stratum s{m, t, {}, {}};
  const int n = m + t;
  for (Mask mask = 1; mask < (Mask{1} << n); ++mask) {
    if (std::popcount(mask) <= spec.max_outdeg) s.successor_sets.push_back(mask);
  }
  if (spec.canonical_dedup) {
    std::vector<int> nt(m > 0 ? m - 1 : 0), term(t);
    std::iota(nt.begin(), nt.end(), 1);
    std::iota(term.begin(), term.end(), m);
    do {
      std::vector<int> tp = term;
      do {
        std::vector<int> map(n);
        map[0] = 0;
        for (int i = 1; i < m; ++i) map[i] = nt[i - 1];
        for (int i = 0; i < t; ++i) map[m + i] = tp[i];
        s.relabelings.push_back(std::move(map));
      } while (std::next_permutation(tp.begin(), tp.end()));
    } while (std::next_permutation(nt.begin(), nt.end()));
  }
  return s;
}

Mask relabel(Mask mask, const std::vector<int>& map) {
  Mask out = 0;
  while (mask) {
    const int v = std::countr_zero(mask);
    mask &= mask - 1;
    out |= Mask{1} << map[v];
  }
  return out;
}

// True iff no relabeling produces a lexicographically smaller (successor
// sets, owners) encoding.
bool is_canonical(const Stratum& s, const std::vector<Mask>& sets, const std::vector<int>& owner) {
  std::vector<Mask> relabeled_sets(s.m);
  std::vector<int> relabeled_owner(s.m);
  for (const auto& map : s.relabelings) {
    for (int v = 0; v < s.m; ++v) {
      relabeled_sets[map[v]] = relabel(sets[v], map);
      relabeled_owner[map[v]] = owner[v];
    }
    if (std::tie(relabeled_sets, relabeled_owner) < std::tie(sets, owner)) return false;
  }
  return true;
}

}  // namespace

void for_each_form(const EnumSpec& spec, const std::function<void(const FormSlot&)>& visit) {
  validate(spec);
  std::uint64_t index = 0, ordinal = 0;
  for (int m = spec.min_nonterminal; m <= spec.max_nonterminal; ++m) {
    for (int t = spec.min_terminals; t <= spec.max_terminals; ++t) {
      const Stratum stratum = make_stratum(spec, m, t);
      const int n = m + t;
      const auto choices = stratum.successor_sets.size();
      std::vector<std::size_t> digit(m, 0);
      std::vector<Mask> sets(m);
      while (true) {
        for (int v = 0; v < m; ++v) sets[v] = stratum.successor_sets[digit[v]];
        std::vector<std::vector<Vertex>> adjacency(n);
        for (int v = 0; v < m; ++v) {
          for (int w = 0; w < n; ++w) {
            if (sets[v] >> w & 1) adjacency[v].push_back(w);
          }
        }
        auto graph = std::make_shared<const Digraph>(Digraph::from_adjacency(adjacency));

        std::vector<int> owner(m, 1);
        std::uint64_t games_per_form = 0;
        bool skip_graph = false;
        while (!skip_graph) {
          if (!spec.canonical_dedup || is_canonical(stratum, sets, owner)) {
            std::vector<int> full_owner(owner);
            full_owner.resize(n, 0);
            auto form = std::make_shared<const GameForm>(*graph, spec.players, std::move(full_owner), Vertex{0},
                                                         spec.mode);
            if (spec.max_interior >= 0 && form->cyclic_outcome_count() > spec.max_interior) {
              // Ownership does not change the SCC structure.
              skip_graph = true;
              break;
            }
            if (games_per_form == 0) {
              games_per_form = 1;
              const std::uint64_t perms = factorial(form->outcome_count());
              for (int i = 0; i < spec.players; ++i) games_per_form = checked_mul(games_per_form, perms);
            }
            visit(FormSlot{std::move(form), index, games_per_form, ordinal});
            index += games_per_form;
            ++ordinal;
          }
          int v = m - 1;
          while (v >= 0 && owner[v] == spec.players) owner[v--] = 1;
          if (v < 0) break;
          ++owner[v];
        }

        int v = m - 1;
        while (v >= 0 && digit[v] + 1 == choices) digit[v--] = 0;
        if (v < 0) break;
        ++digit[v];
      }
    }
  }
}

std::uint64_t count_games(const EnumSpec& spec) {
  std::uint64_t total = 0;
  for_each_form(spec, [&](const FormSlot& slot) { total += slot.game_count; });
  return total;
}

PreferenceOrder preference_from_index(const GameForm& form, std::uint64_t permutation_index) {
  const int k = form.outcome_count();
  std::vector<int> available(k);
  std::iota(available.begin(), available.end(), 0);
  PreferenceOrder order;
  for (int position = 0; position < k; ++position) {
    const std::uint64_t block = factorial(k - 1 - position);
    const auto pick = static_cast<std::size_t>(permutation_index / block);
    permutation_index %= block;
    order.push_back(form.outcome_at(available[pick]));
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return order;
}

Game game_at(const FormSlot& slot, std::uint64_t offset) {
  const GameForm& form = *slot.form;
  const std::uint64_t perms = factorial(form.outcome_count());
  std::vector<PreferenceOrder> prefs(form.players());
  for (int i = form.players() - 1; i >= 0; --i) {
    prefs[i] = preference_from_index(form, offset % perms);
    offset /= perms;
  }
  return Game(slot.form, std::move(prefs));
}

bool passes_filters(const Game& game, unsigned filters) {
  if ((filters & kRequireBidirected) && !is_bidirected(game.graph())) return false;
  if ((filters & kRequireC) && !check_condition_C(game)) return false;
  if ((filters & kRequireC22) && !check_condition_C22(game).holds) return false;
  if ((filters & kRequireCprime) && !check_condition_Cprime(game)) return false;
  if ((filters & kRequireCprime22) && !check_condition_Cprime22(game).holds) return false;
  return true;
}

void for_each_game(const EnumSpec& spec, const std::function<void(std::uint64_t, const Game&)>& visit) {
  const std::uint64_t total = spec.shard.total;
  for_each_form(spec, [&](const FormSlot& slot) {
    std::uint64_t offset = (spec.shard.index + total - slot.first_index % total) % total;
    for (; offset < slot.game_count; offset += total) {
      Game game = game_at(slot, offset);
      if (passes_filters(game, spec.filters)) visit(slot.first_index + offset, game);
    }
  });
}

std::vector<Game> enumerate_games(const EnumSpec& spec) {
  std::vector<Game> out;
  for_each_game(spec, [&](std::uint64_t, const Game& game) { out.push_back(game); });
  return out;
}

}  // namespace neforge
