// neforge: command-line front end for the DG/DGMS game library.
//
// Exit codes: 0 completed, 1 counterexample found (conjecture), 2 input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "neforge/conditions.hpp"
#include "neforge/dot.hpp"
#include "neforge/error.hpp"
#include "neforge/json_io.hpp"
#include "neforge/search.hpp"
#include "neforge/solvers.hpp"
#include "neforge/subgame.hpp"

using namespace neforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInput = 2;

struct Config {
  std::string game_path;
  std::string profile_path;
  std::string output_path;
  std::string format = "json";
  std::optional<int> start;
  int jobs = 1;
  // enumeration
  EnumSpec spec;
  std::string mode;  // empty: dg, or the conjecture's mode
  std::vector<std::string> filters;
  std::string shard = "0/1";
  std::size_t max_listed = 100;
  std::string kind = "ne-free";
  std::string which;
  // misc
  std::string prefix_path;
  std::string report_path;
  std::vector<std::string> report_paths;
  std::string certificate_path;
  std::string certificate_kind = "ne-free";
  std::uint64_t seed = 0;
  int vertices = 5;
  double edge_probability = 0.4;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path)); }

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + cfg.output_path);
  out << text;
}

// Text format: one "key: value" line per top-level field.
void emit(const Config& cfg, const Json& j) {
  if (cfg.format == "text" && j.is_object()) {
    std::ostringstream out;
    for (const auto& [key, value] : j.items()) {
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    emit(cfg, out.str());
    return;
  }
  emit(cfg, j.dump(2) + "\n");
}

Game load_game(const Config& cfg) {
  if (cfg.game_path.empty()) throw Error(ErrorKind::Parse, "a game file is required (--game)");
  return game_from_json(read_json(cfg.game_path));
}

StrategyProfile load_profile(const Config& cfg, const GameForm& form) {
  if (cfg.profile_path.empty()) throw Error(ErrorKind::Parse, "a profile file is required (--profile)");
  return profile_from_json(form, read_json(cfg.profile_path));
}

Vertex start_of(const Config& cfg, const GameForm& form) {
  return cfg.start ? Vertex{*cfg.start} : form.initial_or_throw();
}

int default_jobs() {
  if (const char* env = std::getenv("NE_FORGE_JOBS")) {
    try {
      const int jobs = std::stoi(env);
      if (jobs >= 1) return jobs;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, std::string("NE_FORGE_JOBS must be a positive integer, got \"") + env + "\"");
  }
  return 1;
}

EnumSpec build_spec(Config& cfg) {
  EnumSpec spec = cfg.spec;
  spec.mode = parse_mode(cfg.mode.empty() ? "dg" : cfg.mode);
  for (const auto& f : cfg.filters) {
    if (f == "C") spec.filters |= kRequireC;
    else if (f == "C22") spec.filters |= kRequireC22;
    else if (f == "Cprime") spec.filters |= kRequireCprime;
    else if (f == "Cprime22") spec.filters |= kRequireCprime22;
    else if (f == "bidirected") spec.filters |= kRequireBidirected;
    else throw Error(ErrorKind::Parse, "unknown filter " + f);
  }
  const auto slash = cfg.shard.find('/');
  if (slash == std::string::npos) throw Error(ErrorKind::Parse, "--shard expects INDEX/TOTAL");
  try {
    spec.shard.index = std::stoull(cfg.shard.substr(0, slash));
    spec.shard.total = std::stoull(cfg.shard.substr(slash + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "--shard expects INDEX/TOTAL");
  }
  validate(spec);
  return spec;
}

std::string outcome_text(const Game& game, Outcome o) { return to_string(o, game.mode()); }

Json scc_json(const Digraph& g) {
  const SccPartition scc = scc_decompose(g);
  Json j;
  j["components"] = Json::array();
  for (std::size_t c = 0; c < scc.size(); ++c) {
    j["components"].push_back({{"id", c}, {"vertices", scc.components[c]}, {"class", to_string(scc.scc_class[c])}});
  }
  j["component_of"] = scc.component_of;
  return j;
}

int cmd_scc(const Config& cfg) {
  const Game game = load_game(cfg);
  Json j = scc_json(game.graph());
  const GameForm& form = game.form();
  Json labels = Json::object();
  for (std::size_t c = 0; c < form.scc().size(); ++c) {
    const int id = form.component_outcome_id(static_cast<int>(c));
    if (id >= 0) labels[std::to_string(c)] = outcome_text(game, form.outcome_at(id));
  }
  j["outcome_of_component"] = labels;
  j["bidirected"] = is_bidirected(game.graph());
  emit(cfg, j);
  return kExitOk;
}

int cmd_conditions(const Config& cfg) {
  const Game game = load_game(cfg);
  Json j;
  j["mode"] = to_string(game.mode());
  if (game.mode() == Mode::DG) {
    Json kc = Json::object();
    for (int i = 1; i <= game.players(); ++i) kc[std::to_string(i)] = k_c(game, i);
    const C22Result c22 = check_condition_C22(game);
    j["C"] = check_condition_C(game);
    j["C22"] = c22.holds;
    j["C22_witnesses"] = c22.witnesses ? Json({c22.witnesses->first, c22.witnesses->second}) : Json(nullptr);
    j["k_c"] = kc;
  } else {
    Json k = Json::object();
    for (int i = 1; i <= game.players(); ++i) {
      Json row = Json::array();
      for (int c = 1; c <= game.form().cyclic_outcome_count(); ++c) row.push_back(k_interior(game, i, c));
      k[std::to_string(i)] = row;
    }
    const Cprime22Result c22 = check_condition_Cprime22(game);
    j["Cprime"] = check_condition_Cprime(game);
    j["Cprime_better_reading"] = check_condition_Cprime(game, CprimePolarity::Better);
    j["Cprime22"] = c22.holds;
    if (c22.witnesses) {
      const auto& [a, b] = *c22.witnesses;
      j["Cprime22_witnesses"] = Json::array({Json::array({a.first, a.second}), Json::array({b.first, b.second})});
    } else {
      j["Cprime22_witnesses"] = nullptr;
    }
    j["k_interior"] = k;
  }
  emit(cfg, j);
  return kExitOk;
}

int cmd_resolve(const Config& cfg) {
  const Game game = load_game(cfg);
  const StrategyProfile s = load_profile(cfg, game.form());
  const Play play = resolve_play(game, s, start_of(cfg, game.form()));
  Json j;
  j["path"] = play.path;
  j["shape"] = play.shape == Play::Shape::Finite ? "finite" : "lasso";
  j["cycle"] = std::vector<Vertex>(play.cycle().begin(), play.cycle().end());
  j["outcome"] = outcome_text(game, play.outcome);
  emit(cfg, j);
  return kExitOk;
}

int cmd_check_ne(const Config& cfg) {
  const Game game = load_game(cfg);
  const StrategyProfile s = load_profile(cfg, game.form());
  emit(cfg, ne_report(game, s, start_of(cfg, game.form())));
  return kExitOk;
}

int cmd_check_une(const Config& cfg) {
  const Game game = load_game(cfg);
  const StrategyProfile s = load_profile(cfg, game.form());
  Json j;
  j["profile"] = profile_to_json(s);
  j["is_une"] = is_une(game, s);
  Json failing = Json::array();
  for (Vertex v : game.graph().non_terminals()) {
    if (auto imp = find_improvement(game, s, v)) failing.push_back(improvement_to_json(*imp, game.mode()));
  }
  j["failing_starts"] = failing;
  emit(cfg, j);
  return kExitOk;
}

Json search_json(const Game& game, const NeSearch& r, CertificateKind kind) {
  Json j;
  j["found"] = r.profile.has_value();
  if (r.profile) {
    j["profile_index"] = r.index;
    j["profile"] = profile_to_json(*r.profile);
    if (kind == CertificateKind::NeFree) {
      j["outcome"] = outcome_text(game, resolve_play(game, *r.profile, *game.form().initial()).outcome);
    }
  } else {
    j["certificate"] = certificate_to_json(r.refutation, game.mode());
  }
  return j;
}

int cmd_solve(const Config& cfg, bool uniform) {
  const Game game = load_game(cfg);
  const auto kind = uniform ? CertificateKind::UneFree : CertificateKind::NeFree;
  emit(cfg, search_json(game, uniform ? find_une(game) : find_ne(game), kind));
  return kExitOk;
}

int cmd_solve2(const Config& cfg, bool bi) {
  const Game game = load_game(cfg);
  const StrategyProfile s = bi ? backward_induction(game) : solve_two_person(game);
  Json j;
  j["profile"] = profile_to_json(s);
  if (game.form().initial()) {
    j["outcome"] = outcome_text(game, resolve_play(game, s, *game.form().initial()).outcome);
    j["is_ne"] = is_ne(game, s);
  }
  j["is_une"] = is_une(game, s);
  emit(cfg, j);
  return kExitOk;
}

int cmd_inventory(const Config& cfg) {
  const Game game = load_game(cfg);
  const NeInventory inv = ne_inventory(game);
  auto list = [&](const std::vector<NeEntry>& entries) {
    Json a = Json::array();
    for (const auto& e : entries) a.push_back({{"profile", profile_to_json(e.profile)}, {"outcome", outcome_text(game, e.outcome)}});
    return a;
  };
  Json j;
  j["terminal_ne"] = list(inv.terminal_ne);
  j["cyclic_ne"] = list(inv.cyclic_ne);
  j["vt_reachable_from_initial"] = inv.vt_reachable_from_initial;
  emit(cfg, j);
  return kExitOk;
}

int cmd_merge(const Config& cfg) {
  emit(cfg, game_to_json(merge_cyclic_outcomes(load_game(cfg))));
  return kExitOk;
}

int cmd_remove_initial(const Config& cfg) {
  emit(cfg, game_to_json(remove_initial(load_game(cfg))));
  return kExitOk;
}

int cmd_extend(const Config& cfg) {
  const Game core = load_game(cfg);
  if (cfg.prefix_path.empty()) throw Error(ErrorKind::Parse, "a prefix file is required (--prefix)");
  const Json pj = read_json(cfg.prefix_path);
  Prefix prefix;
  try {
    std::vector<Edge> edges;
    std::size_t n = pj.value("vertex_count", std::size_t{0});
    for (const auto& e : pj.at("edges")) {
      edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
      n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(edges.back().first, edges.back().second)) + 1);
    }
    prefix.graph = Digraph(n, edges);
    for (const auto& [k, v] : pj.at("attach").items()) prefix.attach[std::stoi(k)] = v.get<Vertex>();
    for (const auto& [k, v] : pj.at("owner").items()) prefix.owner[std::stoi(k)] = v.get<int>();
    if (pj.contains("initial") && !pj.at("initial").is_null()) prefix.initial = pj.at("initial").get<Vertex>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("prefix: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "prefix: bad vertex key");
  }
  emit(cfg, game_to_json(extend_with_prefix(core, prefix)));
  return kExitOk;
}

void log_timing(const char* what, const SearchReport& report, std::chrono::steady_clock::duration elapsed) {
  std::cerr << what << ": " << report.games_scanned << " games scanned in "
            << std::chrono::duration<double>(elapsed).count() << " s\n";
}

int cmd_search(Config& cfg) {
  const EnumSpec spec = build_spec(cfg);
  ScanOptions options;
  options.jobs = cfg.jobs;
  options.max_listed = cfg.max_listed;
  if (cfg.kind == "ne-free") {
    options.ne_free = true;
  } else if (cfg.kind == "une-free") {
    options.ne_free = false;
    options.une_free = true;
  } else if (cfg.kind == "both") {
    options.une_free = true;
  } else {
    throw Error(ErrorKind::Parse, "--kind must be ne-free, une-free or both");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SearchReport report = run_scan(spec, options);
  log_timing("search", report, std::chrono::steady_clock::now() - t0);
  emit(cfg, report_to_json(report));
  return kExitOk;
}

int cmd_conjecture(Config& cfg) {
  const Conjecture which = parse_conjecture(cfg.which);
  if (cfg.mode.empty()) cfg.mode = to_string(conjecture_mode(which));
  const EnumSpec spec = build_spec(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const SearchReport report = check_conjecture(spec, which, cfg.jobs, cfg.max_listed);
  log_timing("conjecture", report, std::chrono::steady_clock::now() - t0);
  emit(cfg, report_to_json(report));
  return report.verdict() == Verdict::Counterexample ? kExitCounterexample : kExitOk;
}

int cmd_merge_reports(const Config& cfg) {
  if (cfg.report_paths.empty()) throw Error(ErrorKind::Parse, "at least one report is required");
  SearchReport merged = report_from_json(read_json(cfg.report_paths.front()));
  for (std::size_t k = 1; k < cfg.report_paths.size(); ++k) {
    merged = merge_reports(merged, report_from_json(read_json(cfg.report_paths[k])));
  }
  emit(cfg, report_to_json(merged));
  return kExitOk;
}

int cmd_verify(const Config& cfg) {
  CertificateCheck check;
  Json j;
  if (!cfg.report_path.empty()) {
    const SearchReport report = report_from_json(read_json(cfg.report_path));
    check = verify_report(report);
    j["findings"] = report.ne_free.size() + report.une_free.size() + (report.counterexample ? 1 : 0);
  } else {
    const Game game = load_game(cfg);
    if (cfg.certificate_path.empty()) throw Error(ErrorKind::Parse, "--report or --game with --certificate is required");
    const Certificate certificate = certificate_from_json(read_json(cfg.certificate_path), game.mode());
    CertificateKind kind;
    if (cfg.certificate_kind == "ne-free") kind = CertificateKind::NeFree;
    else if (cfg.certificate_kind == "une-free") kind = CertificateKind::UneFree;
    else throw Error(ErrorKind::Parse, "--kind must be ne-free or une-free");
    check = verify_certificate(game, certificate, kind);
  }
  j["valid"] = check.ok;
  if (!check.ok) j["reason"] = check.reason;
  emit(cfg, j);
  // An invalid certificate is bad input, not a verdict.
  return check.ok ? kExitOk : kExitInput;
}

int cmd_export_dot(const Config& cfg) {
  const Game game = load_game(cfg);
  std::optional<StrategyProfile> s;
  if (!cfg.profile_path.empty()) s = load_profile(cfg, game.form());
  std::optional<Vertex> start;
  if (cfg.start) start = *cfg.start;
  emit(cfg, to_dot(game.form(), s ? &*s : nullptr, start));
  return kExitOk;
}

// Seeded random game, mainly for producing test inputs.
int cmd_random(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const int n = cfg.vertices;
  if (n < 2) throw Error(ErrorKind::Precondition, "--vertices must be at least 2");
  const int players = std::max(1, cfg.spec.players);
  std::bernoulli_distribution edge(cfg.edge_probability);
  std::uniform_int_distribution<int> any(0, n - 1), owner(1, players);
  std::vector<Edge> edges;
  // Vertex n-1 is always a sink; 0 always moves.
  for (int v = 0; v + 1 < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (edge(rng)) edges.emplace_back(v, w);
    }
    if (v == 0 && std::none_of(edges.begin(), edges.end(), [](const Edge& e) { return e.first == 0; })) {
      edges.emplace_back(0, any(rng));
    }
  }
  Digraph g(static_cast<std::size_t>(n), edges);
  std::vector<int> own(n, 0);
  for (int v = 0; v < n; ++v) own[v] = owner(rng);
  auto form = std::make_shared<const GameForm>(g, players, own, Vertex{0}, parse_mode(cfg.mode.empty() ? "dg" : cfg.mode));
  std::vector<PreferenceOrder> prefs;
  for (int i = 0; i < players; ++i) {
    PreferenceOrder order = form->outcomes();
    std::shuffle(order.begin(), order.end(), rng);
    prefs.push_back(order);
  }
  emit(cfg, game_to_json(Game(form, prefs)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neforge: Nash equilibria of DG and DGMS games on digraphs"};
  app.require_subcommand(1);
  Config cfg;
  int jobs_flag = 0;

  auto game_opts = [&](CLI::App* sub) {
    sub->add_option("game,--game", cfg.game_path, "Game JSON file ('-' for stdin)");
    sub->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto profile_opts = [&](CLI::App* sub) {
    sub->add_option("--profile", cfg.profile_path, "Profile JSON file: {\"vertex\": successor}");
    sub->add_option("--start", cfg.start, "Start vertex (default v_0)");
  };
  auto spec_opts = [&](CLI::App* sub) {
    sub->add_option("--players", cfg.spec.players, "Number of players");
    sub->add_option("--min-nonterminal", cfg.spec.min_nonterminal);
    sub->add_option("--max-nonterminal", cfg.spec.max_nonterminal);
    sub->add_option("--min-terminals", cfg.spec.min_terminals);
    sub->add_option("--max-terminals", cfg.spec.max_terminals);
    sub->add_option("--max-outdeg", cfg.spec.max_outdeg);
    sub->add_option("--max-interior", cfg.spec.max_interior, "DGMS only: cap on interior SCCs");
    sub->add_option("--mode", cfg.mode)->check(CLI::IsMember({"dg", "dgms"}));
    sub->add_option("--filter", cfg.filters, "C, C22, Cprime, Cprime22, bidirected");
    sub->add_option("--shard", cfg.shard, "INDEX/TOTAL");
    sub->add_flag("--dedup", cfg.spec.canonical_dedup, "Canonical-form dedup of game forms");
    sub->add_option("--max-listed", cfg.max_listed, "Findings kept per list");
    sub->add_option("-j,--jobs", jobs_flag, "Worker threads (default NE_FORGE_JOBS or 1)")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", cfg.output_path, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  std::map<std::string, std::function<int()>> run;
  auto add = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    run[name] = std::move(fn);
    return sub;
  };

  game_opts(add("scc", "SCC decomposition and classification", [&] { return cmd_scc(cfg); }));
  game_opts(add("conditions", "Conditions C, C22, C', C'22 with witnesses", [&] { return cmd_conditions(cfg); }));
  {
    auto* s = add("resolve", "Play and outcome of a profile", [&] { return cmd_resolve(cfg); });
    game_opts(s);
    profile_opts(s);
  }
  {
    auto* s = add("check-ne", "Is the profile a NE at a start vertex", [&] { return cmd_check_ne(cfg); });
    game_opts(s);
    profile_opts(s);
  }
  {
    auto* s = add("check-une", "Is the profile a uniform NE", [&] { return cmd_check_une(cfg); });
    game_opts(s);
    profile_opts(s);
  }
  game_opts(add("solve", "First NE, or a refutation certificate", [&] { return cmd_solve(cfg, false); }));
  game_opts(add("solve-une", "First uniform NE, or per-profile witnesses", [&] { return cmd_solve(cfg, true); }));
  game_opts(add("solve2", "Two-person solver", [&] { return cmd_solve2(cfg, false); }));
  game_opts(add("bi", "Backward induction on an acyclic game", [&] { return cmd_solve2(cfg, true); }));
  game_opts(add("inventory", "All NE at v_0, terminal vs cyclic", [&] { return cmd_inventory(cfg); }));
  game_opts(add("merge", "Merge the cyclic outcomes of a DGMS game into c", [&] { return cmd_merge(cfg); }));
  game_opts(add("remove-initial", "Subgame without v_0", [&] { return cmd_remove_initial(cfg); }));
  {
    auto* s = add("extend", "Glue an acyclic prefix in front of a game", [&] { return cmd_extend(cfg); });
    game_opts(s);
    s->add_option("--prefix", cfg.prefix_path, "Prefix JSON: edges, attach, owner, initial")->required();
  }
  {
    auto* s = add("search", "Exhaustive scan for NE-free / UNE-free games", [&] { return cmd_search(cfg); });
    spec_opts(s);
    s->add_option("--kind", cfg.kind, "ne-free, une-free or both");
  }
  {
    auto* s = add("conjecture", "Bounded conjecture check", [&] { return cmd_conjecture(cfg); });
    spec_opts(s);
    s->add_option("--which", cfg.which, "catch22, c-implies-ns, bidirected-ns, cprime22-ns, two-witnesses")->required();
  }
  {
    auto* s = add("merge-reports", "Merge shard reports", [&] { return cmd_merge_reports(cfg); });
    s->add_option("reports", cfg.report_paths, "Report JSON files")->required();
    s->add_option("-o,--output", cfg.output_path);
  }
  {
    auto* s = add("verify-certificate", "Replay a report or a certificate", [&] { return cmd_verify(cfg); });
    game_opts(s);
    s->add_option("--report", cfg.report_path, "Search/conjecture report");
    s->add_option("--certificate", cfg.certificate_path, "Certificate JSON (with --game)");
    s->add_option("--kind", cfg.certificate_kind, "ne-free or une-free");
  }
  {
    auto* s = add("export-dot", "Graphviz rendering", [&] { return cmd_export_dot(cfg); });
    game_opts(s);
    profile_opts(s);
  }
  {
    auto* s = add("random", "Seeded random game", [&] { return cmd_random(cfg); });
    s->add_option("--seed", cfg.seed)->required();
    s->add_option("--vertices", cfg.vertices);
    s->add_option("--players", cfg.spec.players);
    s->add_option("--edge-probability", cfg.edge_probability);
    s->add_option("--mode", cfg.mode)->check(CLI::IsMember({"dg", "dgms"}));
    s->add_option("-o,--output", cfg.output_path);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    cfg.jobs = jobs_flag > 0 ? jobs_flag : default_jobs();
    for (CLI::App* sub : app.get_subcommands()) return run.at(sub->get_name())();
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error [parse]: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
