#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "neforge/enumerate.hpp"
#include "neforge/equilibrium.hpp"

namespace neforge {

enum class Conjecture {
  /// (C22) implies Nash-solvability of DG games.
  Catch22,
  /// (C) implies Nash-solvability of DG games.
  CImpliesNs,
  /// Games on bidirected digraphs are Nash-solvable.
  BidirectedNs,
  /// (C'22) implies Nash-solvability of DGMS games.
  Cprime22Ns,
  /// Every NE-free DG game has two distinct players with k_c >= 2.
  TwoWitnesses,
};

const char* to_string(Conjecture which);
Conjecture parse_conjecture(std::string_view text);
/// Filters a scan must apply for the conjecture's hypothesis.
unsigned hypothesis_filters(Conjecture which);
Mode conjecture_mode(Conjecture which);

/// A game found by a scan with its replay-validated certificate.
struct Finding {
  std::uint64_t index = 0;
  Game game;
  Certificate certificate;
};

enum class Verdict { SearchComplete, VerifiedUpToBound, Counterexample };

const char* to_string(Verdict verdict);

struct ScanOptions {
  bool ne_free = true;
  bool une_free = false;
  std::optional<Conjecture> conjecture;
  /// Findings kept per list; counts are always exact.
  std::size_t max_listed = 100;
  int jobs = 1;
};

/// Deterministic, shard-mergeable record of a scan. Lists hold the findings
/// with the smallest global indices, in index order.
struct SearchReport {
  EnumSpec spec;
  std::optional<Conjecture> conjecture;
  bool ne_free_searched = true;
  bool une_free_searched = false;
  std::size_t max_listed = 100;
  /// Shard indices (of spec.shard.total) folded into this report. A report that
  /// covers every shard is normalized to the single-shard form.
  std::vector<std::uint64_t> shards_covered;

  std::uint64_t games_enumerated = 0;
  std::uint64_t games_scanned = 0;
  std::uint64_t ne_free_count = 0;
  std::uint64_t une_free_count = 0;
  std::uint64_t counterexample_count = 0;
  std::vector<Finding> ne_free;
  std::vector<Finding> une_free;
  std::optional<Finding> counterexample;

  Verdict verdict() const;
};

/// Enumerates the spec's shard, applying its filters, and classifies every
/// scanned game. NE-free findings are re-proven by replaying their certificate
/// before they are counted; listed UNE-free findings likewise.
SearchReport run_scan(const EnumSpec& spec, const ScanOptions& options);

/// Adds the conjecture's hypothesis filters to the spec and scans for
/// counterexamples. Throws Error(Precondition) when the spec's mode does not
/// match the conjecture.
SearchReport check_conjecture(EnumSpec spec, Conjecture which, int jobs = 1, std::size_t max_listed = 100);

/// Same scan over an explicit list of games; their list positions act as indices.
SearchReport check_conjecture(std::span<const Game> games, Conjecture which, std::size_t max_listed = 100);

SearchReport find_ne_free(const EnumSpec& spec, int jobs = 1, std::size_t max_listed = 100);
SearchReport find_une_free(const EnumSpec& spec, int jobs = 1, std::size_t max_listed = 100);

/// Associative and commutative. Throws Error(Precondition) when the reports
/// come from different scans or overlapping shards.
SearchReport merge_reports(const SearchReport& a, const SearchReport& b);

/// Re-checks every listed finding of a report by replay.
CertificateCheck verify_report(const SearchReport& report);

}  // namespace neforge
