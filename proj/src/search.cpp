#include "neforge/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "neforge/conditions.hpp"
#include "neforge/error.hpp"

namespace neforge {

const char* to_string(Conjecture which) {
  switch (which) {
    case Conjecture::Catch22: return "catch22";
    case Conjecture::CImpliesNs: return "c-implies-ns";
    case Conjecture::BidirectedNs: return "bidirected-ns";
    case Conjecture::Cprime22Ns: return "cprime22-ns";
    case Conjecture::TwoWitnesses: return "two-witnesses";
  }
  return "?";
}

Conjecture parse_conjecture(std::string_view text) {
  for (Conjecture c : {Conjecture::Catch22, Conjecture::CImpliesNs, Conjecture::BidirectedNs, Conjecture::Cprime22Ns,
                       Conjecture::TwoWitnesses}) {
    if (text == to_string(c)) return c;
  }
  throw Error(ErrorKind::Parse, "unknown conjecture \"" + std::string(text) + "\"");
}

unsigned hypothesis_filters(Conjecture which) {
  switch (which) {
    case Conjecture::Catch22: return kRequireC22;
    case Conjecture::CImpliesNs: return kRequireC;
    case Conjecture::BidirectedNs: return kRequireBidirected;
    case Conjecture::Cprime22Ns: return kRequireCprime22;
    case Conjecture::TwoWitnesses: return 0;
  }
  return 0;
}

Mode conjecture_mode(Conjecture which) { return which == Conjecture::Cprime22Ns ? Mode::DGMS : Mode::DG; }

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::SearchComplete: return "search-complete";
    case Verdict::VerifiedUpToBound: return "verified-up-to-bound";
    case Verdict::Counterexample: return "counterexample";
  }
  return "?";
}

Verdict SearchReport::verdict() const {
  if (!conjecture) return Verdict::SearchComplete;
  return counterexample_count > 0 ? Verdict::Counterexample : Verdict::VerifiedUpToBound;
}

namespace {

// Per-permutation data for a strict order over k outcome ids.
struct PermTable {
  int k = 0;
  std::uint64_t count = 0;
  std::vector<OutcomeMask> better;  // [perm * k + outcome]: outcomes ranked strictly above
  std::vector<char> c_last;         // DG (C) / DGMS (C') for this player
  std::vector<char> two_below;      // DG k_c >= 2 / DGMS some k(i, c_j) >= 2
};

PermTable make_perm_table(int k, int p) {
  PermTable table;
  table.k = k;
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::vector<int> rank(k);
  do {
    for (int r = 0; r < k; ++r) rank[perm[r]] = r;
    for (int o = 0; o < k; ++o) {
      OutcomeMask mask = 0;
      for (int x = 0; x < k; ++x) {
        if (rank[x] < rank[o]) mask |= OutcomeMask{1} << x;
      }
      table.better.push_back(mask);
    }
    bool all_below = true, some_two = false;
    for (int c = p; c < k; ++c) {
      int below = 0;
      for (int a = 0; a < p; ++a) below += rank[a] > rank[c];
      all_below = all_below && below == 0;
      some_two = some_two || below >= 2;
    }
    table.c_last.push_back(all_below);
    table.two_below.push_back(some_two);
    ++table.count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return table;
}

class PermCache {
 public:
  const PermTable& get(int k, int p) {
    auto it = tables_.find({k, p});
    if (it == tables_.end()) it = tables_.emplace(std::pair{k, p}, make_perm_table(k, p)).first;
    return it->second;
  }

 private:
  std::map<std::pair<int, int>, PermTable> tables_;
};

// Per player and permutation, the set of profile signatures at which the player
// has no improving deviation.
struct SatisfactionTable {
  std::size_t words = 0;
  std::vector<std::uint64_t> bits;  // [(player * perms + perm) * words + word]

  const std::uint64_t* row(int player, std::uint64_t perm, std::uint64_t perms) const {
    return bits.data() + (static_cast<std::size_t>(player) * perms + perm) * words;
  }
};

// Signature of a profile: for each start, the outcome followed by each
// player's achievable mask.
SatisfactionTable build_table(const GameForm& form, const PermTable& perms, std::span<const Vertex> starts) {
  const int n = form.players();
  const std::size_t width = starts.size() * static_cast<std::size_t>(n + 1);
  Analyzer analyzer(form);
  ProfileSpace space(form);
  std::map<std::vector<OutcomeMask>, int> seen;
  std::vector<std::vector<OutcomeMask>> signatures;
  StrategyProfile s = space.at(0);
  std::vector<OutcomeMask> sig(width);
  std::vector<char> owns(n + 1, 0);
  for (Vertex v : form.graph().non_terminals()) owns[form.owner(v)] = 1;
  do {
    std::size_t at = 0;
    for (Vertex start : starts) {
      const int out = analyzer.play_outcome(s.choices(), start);
      sig[at++] = static_cast<OutcomeMask>(out);
      for (int i = 1; i <= n; ++i) {
        sig[at++] = owns[i] ? analyzer.achievable(s.choices(), i, start) : OutcomeMask{1} << out;
      }
    }
    if (seen.emplace(sig, static_cast<int>(signatures.size())).second) signatures.push_back(sig);
  } while (space.next(s));

  SatisfactionTable table;
  table.words = (signatures.size() + 63) / 64;
  const std::uint64_t count = perms.count;
  table.bits.assign(static_cast<std::size_t>(n) * count * table.words, 0);
  const int k = perms.k;
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t r = 0; r < count; ++r) {
      std::uint64_t* row = table.bits.data() + (static_cast<std::size_t>(i) * count + r) * table.words;
      const OutcomeMask* better = perms.better.data() + r * k;
      for (std::size_t x = 0; x < signatures.size(); ++x) {
        const auto& g = signatures[x];
        bool ok = true;
        for (std::size_t base = 0; base < width && ok; base += n + 1) {
          ok = (g[base + 1 + i] & better[g[base]]) == 0;
        }
        if (ok) row[x / 64] |= std::uint64_t{1} << (x % 64);
      }
    }
  }
  return table;
}

struct FormResult {
  std::uint64_t enumerated = 0;
  std::uint64_t scanned = 0;
  std::uint64_t ne_free = 0;
  std::uint64_t une_free = 0;
  std::uint64_t counterexamples = 0;
  std::vector<Finding> ne_free_list;
  std::vector<Finding> une_free_list;
  std::optional<Finding> counterexample;
};

struct ScanContext {
  const EnumSpec* spec;
  const ScanOptions* options;
  unsigned filters;
};

[[noreturn]] void inconsistency(const std::string& what, std::uint64_t index) {
  throw Error(ErrorKind::Precondition, "internal inconsistency at game " + std::to_string(index) + ": " + what);
}

Finding prove_ne_free(const FormSlot& slot, std::uint64_t offset) {
  Game game = game_at(slot, offset);
  const std::uint64_t index = slot.first_index + offset;
  NeSearch search = find_ne(game);
  if (search.profile) inconsistency("fast oracle reports NE-free but a NE exists", index);
  CertificateCheck check = verify_certificate(game, search.refutation, CertificateKind::NeFree);
  if (!check.ok) inconsistency("NE-free certificate failed replay: " + check.reason, index);
  return Finding{index, std::move(game), std::move(search.refutation)};
}

Finding prove_une_free(const FormSlot& slot, std::uint64_t offset) {
  Game game = game_at(slot, offset);
  const std::uint64_t index = slot.first_index + offset;
  NeSearch search = find_une(game);
  if (search.profile) inconsistency("fast oracle reports UNE-free but a UNE exists", index);
  CertificateCheck check = verify_certificate(game, search.refutation, CertificateKind::UneFree);
  if (!check.ok) inconsistency("UNE-free certificate failed replay: " + check.reason, index);
  return Finding{index, std::move(game), std::move(search.refutation)};
}

FormResult scan_form(const ScanContext& ctx, const FormSlot& slot, PermCache& cache, std::size_t list_budget) {
  FormResult result;
  const EnumSpec& spec = *ctx.spec;
  const ScanOptions& options = *ctx.options;
  const std::uint64_t step = spec.shard.total;
  const std::uint64_t offset = (spec.shard.index + step - slot.first_index % step) % step;
  if (offset >= slot.game_count) return result;
  result.enumerated = (slot.game_count - offset + step - 1) / step;

  const GameForm& form = *slot.form;
  if ((ctx.filters & kRequireBidirected) && !is_bidirected(form.graph())) return result;

  const int n = form.players();
  const PermTable& perms = cache.get(form.outcome_count(), form.terminal_outcome_count());
  const std::uint64_t count = perms.count;
  const Vertex initial = *form.initial();
  const SatisfactionTable ne_table = build_table(form, perms, std::span<const Vertex>(&initial, 1));
  std::optional<SatisfactionTable> une_table;
  if (options.une_free) {
    const std::vector<Vertex> starts = form.graph().non_terminals();
    une_table = build_table(form, perms, starts);
  }

  const bool need_c = ctx.filters & (kRequireC | kRequireCprime);
  const bool need_22 = ctx.filters & (kRequireC22 | kRequireCprime22);
  const bool two_witness = options.conjecture == Conjecture::TwoWitnesses;

  // Depth-first over preference digits (player 1 most significant). acc[d]
  // holds the AND of the satisfaction rows of players 1..d+1, so each prefix
  // is combined once; the last digit jumps straight to in-shard offsets.
  const std::uint64_t shard = spec.shard.index;
  std::vector<std::uint64_t> weight(n, 1);
  for (int d = n - 2; d >= 0; --d) weight[d] = weight[d + 1] * count;
  std::vector<std::vector<std::uint64_t>> ne_acc(n, std::vector<std::uint64_t>(ne_table.words));
  std::vector<std::vector<std::uint64_t>> une_acc(n, std::vector<std::uint64_t>(une_table ? une_table->words : 0));

  auto combine = [&](const SatisfactionTable& table, std::vector<std::vector<std::uint64_t>>& acc, int d,
                     std::uint64_t r) {
    const std::uint64_t* row = table.row(d, r, count);
    std::uint64_t any = 0;
    for (std::size_t w = 0; w < table.words; ++w) {
      acc[d][w] = d == 0 ? row[w] : acc[d - 1][w] & row[w];
      any |= acc[d][w];
    }
    return any != 0;
  };
  auto leaf_has = [&](const SatisfactionTable& table, const std::vector<std::vector<std::uint64_t>>& acc,
                      std::uint64_t r) {
    const std::uint64_t* row = table.row(n - 1, r, count);
    if (n == 1) {
      for (std::size_t w = 0; w < table.words; ++w)
        if (row[w]) return true;
      return false;
    }
    const std::uint64_t* prev = acc[n - 2].data();
    for (std::size_t w = 0; w < table.words; ++w)
      if (prev[w] & row[w]) return true;
    return false;
  };

  // Slow path, only for games the tables report NE-free or UNE-free.
  auto hit = [&](std::uint64_t at, std::uint64_t r, int two) {
    if (!leaf_has(ne_table, ne_acc, r)) {
      ++result.une_free;  // a UNE is a NE at v_0
      ++result.ne_free;
      Finding finding = prove_ne_free(slot, at);
      const bool counterexample = options.conjecture.has_value() && (!two_witness || two < 2);
      if (counterexample) {
        ++result.counterexamples;
        if (!result.counterexample) result.counterexample = finding;
      }
      if (options.une_free && result.une_free_list.size() < list_budget) {
        result.une_free_list.push_back(prove_une_free(slot, at));
      }
      if (options.ne_free && result.ne_free_list.size() < list_budget) {
        result.ne_free_list.push_back(std::move(finding));
      }
    } else {
      ++result.une_free;
      if (result.une_free_list.size() < list_budget) result.une_free_list.push_back(prove_une_free(slot, at));
    }
  };
  const bool single_word = ne_table.words == 1 && !une_table;

  auto descend = [&](auto& self, int d, std::uint64_t base, bool all_c, int two) -> void {
    if (d == n - 1) {
      const std::uint64_t first = (shard + step - (slot.first_index + base) % step) % step;
      if (single_word && !need_c && !need_22) {
        // Hot loop: one AND per game.
        const std::uint64_t prev = n == 1 ? ~std::uint64_t{0} : ne_acc[n - 2][0];
        const std::uint64_t* rows = ne_table.row(n - 1, 0, count);
        for (std::uint64_t r = first; r < count; r += step) {
          ++result.scanned;
          if ((prev & rows[r]) == 0) hit(base + r, r, two + perms.two_below[r]);
        }
        return;
      }
      for (std::uint64_t r = first; r < count; r += step) {
        if (need_c && !(all_c && perms.c_last[r])) continue;
        const int twos = two + perms.two_below[r];
        if (need_22 && twos >= 2) continue;
        ++result.scanned;
        if (!leaf_has(ne_table, ne_acc, r) || (une_table && !leaf_has(*une_table, une_acc, r))) hit(base + r, r, twos);
      }
      return;
    }
    for (std::uint64_t r = 0; r < count; ++r) {
      const bool c_ok = all_c && perms.c_last[r];
      const int twos = two + perms.two_below[r];
      // Both filters are monotone along a prefix, so a failing prefix prunes its subtree.
      if (need_c && !c_ok) continue;
      if (need_22 && twos >= 2) continue;
      combine(ne_table, ne_acc, d, r);
      if (une_table) combine(*une_table, une_acc, d, r);
      self(self, d + 1, base + r * weight[d], c_ok, twos);
    }
  };
  descend(descend, 0, 0, true, 0);
  if (!options.une_free) result.une_free = 0;
  return result;
}

SearchReport empty_report(const EnumSpec& spec, const ScanOptions& options) {
  SearchReport report;
  report.spec = spec;
  report.conjecture = options.conjecture;
  report.ne_free_searched = options.ne_free;
  report.une_free_searched = options.une_free;
  report.max_listed = options.max_listed;
  report.shards_covered = {spec.shard.index};
  return report;
}

void absorb(SearchReport& report, FormResult&& r) {
  report.games_enumerated += r.enumerated;
  report.games_scanned += r.scanned;
  report.ne_free_count += r.ne_free;
  report.une_free_count += r.une_free;
  report.counterexample_count += r.counterexamples;
  for (auto& f : r.ne_free_list) {
    if (report.ne_free.size() < report.max_listed) report.ne_free.push_back(std::move(f));
  }
  for (auto& f : r.une_free_list) {
    if (report.une_free.size() < report.max_listed) report.une_free.push_back(std::move(f));
  }
  if (r.counterexample && !report.counterexample) report.counterexample = std::move(r.counterexample);
}

}  // namespace

SearchReport run_scan(const EnumSpec& spec, const ScanOptions& options) {
  validate(spec);
  if (options.jobs < 1) throw Error(ErrorKind::Precondition, "jobs must be at least 1");
  if (options.conjecture && conjecture_mode(*options.conjecture) != spec.mode) {
    throw Error(ErrorKind::Precondition, std::string("conjecture ") + to_string(*options.conjecture) + " applies to " +
                                             to_string(conjecture_mode(*options.conjecture)) + " games");
  }
  ScanContext ctx{&spec, &options, spec.filters};
  SearchReport report = empty_report(spec, options);
  if (spec.shard.total == 1) report.shards_covered = {0};

  constexpr std::size_t batch_size = 2048;
  std::vector<FormSlot> batch;
  std::vector<FormResult> results;
  std::vector<PermCache> caches(options.jobs);

  auto flush = [&] {
    results.assign(batch.size(), FormResult{});
    const std::size_t budget = options.max_listed - std::min(options.max_listed, report.ne_free.size());
    const std::size_t une_budget = options.max_listed - std::min(options.max_listed, report.une_free.size());
    const std::size_t list_budget = std::max(budget, une_budget);
    if (options.jobs == 1) {
      for (std::size_t k = 0; k < batch.size(); ++k) results[k] = scan_form(ctx, batch[k], caches[0], list_budget);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(options.jobs);
      std::vector<std::thread> workers;
      for (int w = 0; w < options.jobs; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k < batch.size(); k = next++) {
              results[k] = scan_form(ctx, batch[k], caches[w], list_budget);
            }
          } catch (...) {
            errors[w] = std::current_exception();
            next = batch.size();
          }
        });
      }
      for (auto& t : workers) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (auto& r : results) absorb(report, std::move(r));
    batch.clear();
  };

  for_each_form(spec, [&](const FormSlot& slot) {
    batch.push_back(slot);
    if (batch.size() == batch_size) flush();
  });
  flush();
  if (!options.ne_free) report.ne_free.clear();
  return report;
}

SearchReport check_conjecture(EnumSpec spec, Conjecture which, int jobs, std::size_t max_listed) {
  if (spec.mode != conjecture_mode(which)) {
    throw Error(ErrorKind::Precondition, std::string("conjecture ") + to_string(which) + " applies to " +
                                             to_string(conjecture_mode(which)) + " games, the spec enumerates " +
                                             to_string(spec.mode) + " games");
  }
  spec.filters |= hypothesis_filters(which);
  ScanOptions options;
  options.conjecture = which;
  options.jobs = jobs;
  options.max_listed = max_listed;
  return run_scan(spec, options);
}

SearchReport check_conjecture(std::span<const Game> games, Conjecture which, std::size_t max_listed) {
  EnumSpec spec;
  spec.mode = conjecture_mode(which);
  spec.filters = hypothesis_filters(which);
  ScanOptions options;
  options.conjecture = which;
  options.max_listed = max_listed;
  SearchReport report = empty_report(spec, options);
  for (std::size_t k = 0; k < games.size(); ++k) {
    const Game& game = games[k];
    if (game.mode() != spec.mode) {
      throw Error(ErrorKind::Precondition, "game " + std::to_string(k) + " has the wrong mode for this conjecture");
    }
    ++report.games_enumerated;
    if (!passes_filters(game, spec.filters)) continue;
    ++report.games_scanned;
    NeSearch search = find_ne(game);
    if (search.profile) continue;
    CertificateCheck check = verify_certificate(game, search.refutation, CertificateKind::NeFree);
    if (!check.ok) inconsistency("NE-free certificate failed replay: " + check.reason, k);
    Finding finding{k, game, std::move(search.refutation)};
    ++report.ne_free_count;
    const bool counterexample = which != Conjecture::TwoWitnesses || check_condition_C22(game).holds;
    if (counterexample) {
      ++report.counterexample_count;
      if (!report.counterexample) report.counterexample = finding;
    }
    if (report.ne_free.size() < max_listed) report.ne_free.push_back(std::move(finding));
  }
  return report;
}

SearchReport find_ne_free(const EnumSpec& spec, int jobs, std::size_t max_listed) {
  ScanOptions options;
  options.jobs = jobs;
  options.max_listed = max_listed;
  return run_scan(spec, options);
}

SearchReport find_une_free(const EnumSpec& spec, int jobs, std::size_t max_listed) {
  ScanOptions options;
  options.ne_free = false;
  options.une_free = true;
  options.jobs = jobs;
  options.max_listed = max_listed;
  return run_scan(spec, options);
}

SearchReport merge_reports(const SearchReport& a, const SearchReport& b) {
  auto same_scan = [](EnumSpec x, EnumSpec y) {
    x.shard.index = y.shard.index = 0;
    return x == y;
  };
  if (!same_scan(a.spec, b.spec) || a.conjecture != b.conjecture || a.ne_free_searched != b.ne_free_searched ||
      a.une_free_searched != b.une_free_searched || a.max_listed != b.max_listed) {
    throw Error(ErrorKind::Precondition, "cannot merge reports of different scans");
  }
  std::vector<std::uint64_t> shards;
  std::set_union(a.shards_covered.begin(), a.shards_covered.end(), b.shards_covered.begin(), b.shards_covered.end(),
                 std::back_inserter(shards));
  if (shards.size() != a.shards_covered.size() + b.shards_covered.size()) {
    throw Error(ErrorKind::Precondition, "cannot merge reports with overlapping shards");
  }

  SearchReport out = a;
  out.shards_covered = shards;
  out.games_enumerated += b.games_enumerated;
  out.games_scanned += b.games_scanned;
  out.ne_free_count += b.ne_free_count;
  out.une_free_count += b.une_free_count;
  out.counterexample_count += b.counterexample_count;
  auto merge_lists = [&](std::vector<Finding>& into, const std::vector<Finding>& from) {
    std::vector<Finding> merged;
    std::merge(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged),
               [](const Finding& x, const Finding& y) { return x.index < y.index; });
    if (merged.size() > out.max_listed) merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(out.max_listed), merged.end());
    into = std::move(merged);
  };
  merge_lists(out.ne_free, b.ne_free);
  merge_lists(out.une_free, b.une_free);
  if (b.counterexample && (!out.counterexample || b.counterexample->index < out.counterexample->index)) {
    out.counterexample = b.counterexample;
  }
  if (out.shards_covered.size() == out.spec.shard.total) {
    out.spec.shard = Shard{};
    out.shards_covered = {0};
  } else {
    out.spec.shard.index = out.shards_covered.front();
  }
  return out;
}

CertificateCheck verify_report(const SearchReport& report) {
  auto check_list = [](const std::vector<Finding>& list, CertificateKind kind) -> CertificateCheck {
    for (const Finding& f : list) {
      CertificateCheck c = verify_certificate(f.game, f.certificate, kind);
      if (!c.ok) return {false, "game " + std::to_string(f.index) + ": " + c.reason};
    }
    return {};
  };
  if (auto c = check_list(report.ne_free, CertificateKind::NeFree); !c.ok) return c;
  if (auto c = check_list(report.une_free, CertificateKind::UneFree); !c.ok) return c;
  if (report.counterexample) {
    const Finding& f = *report.counterexample;
    CertificateCheck c = verify_certificate(f.game, f.certificate, CertificateKind::NeFree);
    if (!c.ok) return {false, "counterexample: " + c.reason};
    if (!passes_filters(f.game, report.spec.filters)) {
      return {false, "counterexample does not satisfy the conjecture's hypothesis"};
    }
    if (report.conjecture == Conjecture::TwoWitnesses && !check_condition_C22(f.game).holds) {
      return {false, "counterexample has two witness players"};
    }
  }
  return {};
}

}  // namespace neforge
