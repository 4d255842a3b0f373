#include "neforge/json_io.hpp"

#include <string>

#include "neforge/error.hpp"

namespace neforge {

namespace {

// Runs `body`, turning nlohmann type/key errors into Error(Parse).
template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

Vertex parse_vertex_key(const std::string& key) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw Error(ErrorKind::Parse, "\"" + key + "\" is not a vertex id");
  return v;
}

const std::pair<unsigned, const char*> kFilterNames[] = {
    {kRequireC, "C"},           {kRequireC22, "C22"},           {kRequireCprime, "Cprime"},
    {kRequireCprime22, "Cprime22"}, {kRequireBidirected, "bidirected"},
};

Json finding_to_json(const Finding& f) {
  Json j;
  j["index"] = f.index;
  j["game"] = game_to_json(f.game);
  j["certificate"] = certificate_to_json(f.certificate, f.game.mode());
  return j;
}

Finding finding_from_json(const Json& j) {
  Game game = game_from_json(j.at("game"));
  Certificate certificate = certificate_from_json(j.at("certificate"), game.mode());
  return Finding{j.at("index").get<std::uint64_t>(), std::move(game), std::move(certificate)};
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Json game_to_json(const Game& game) {
  const GameDescription d = describe(game);
  Json j;
  j["vertex_count"] = d.vertex_count;
  j["players"] = d.players;
  j["mode"] = to_string(d.mode);
  j["initial"] = d.initial ? Json(*d.initial) : Json(nullptr);
  j["edges"] = Json::array();
  for (auto [u, v] : d.edges) j["edges"].push_back({u, v});
  j["owner"] = Json::object();
  for (auto [v, p] : d.owner) j["owner"][std::to_string(v)] = p;
  j["preferences"] = d.preferences;
  return j;
}

GameDescription game_description_from_json(const Json& j) {
  return guarded("game", [&] {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "game: expected an object");
    GameDescription d;
    d.players = j.at("players").get<int>();
    d.mode = parse_mode(j.value("mode", std::string("dg")));
    std::size_t implied = 0;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Parse, "game: each edge must be a pair");
      Edge edge{e[0].get<Vertex>(), e[1].get<Vertex>()};
      implied = std::max<std::size_t>(implied, static_cast<std::size_t>(std::max(edge.first, edge.second)) + 1);
      d.edges.push_back(edge);
    }
    d.vertex_count = j.contains("vertex_count") ? j.at("vertex_count").get<std::size_t>() : implied;
    for (const auto& [key, player] : j.at("owner").items()) d.owner[parse_vertex_key(key)] = player.get<int>();
    if (j.contains("initial") && !j.at("initial").is_null()) d.initial = j.at("initial").get<Vertex>();
    d.preferences = j.at("preferences").get<std::vector<std::vector<std::string>>>();
    return d;
  });
}

Game game_from_json(const Json& j) { return make_game(game_description_from_json(j)); }

Json profile_to_json(const StrategyProfile& s) {
  Json j = Json::object();
  for (Vertex v = 0; v < static_cast<Vertex>(s.size()); ++v) {
    if (s[v] >= 0) j[std::to_string(v)] = s[v];
  }
  return j;
}

StrategyProfile profile_from_json(const GameForm& form, const Json& j) {
  return guarded("profile", [&] {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "profile: expected an object of vertex -> successor");
    std::vector<Vertex> choice(form.vertex_count(), -1);
    for (const auto& [key, target] : j.items()) {
      const Vertex v = parse_vertex_key(key);
      if (v < 0 || v >= static_cast<Vertex>(choice.size())) {
        throw Error(ErrorKind::InvalidProfile, "profile names unknown vertex " + key);
      }
      choice[v] = target.get<Vertex>();
    }
    StrategyProfile s(std::move(choice));
    check_profile(form, s);
    return s;
  });
}

Json strategy_to_json(const Strategy& t) {
  Json j = Json::object();
  for (auto [v, w] : t) j[std::to_string(v)] = w;
  return j;
}

Strategy strategy_from_json(const Json& j) {
  return guarded("strategy", [&] {
    Strategy t;
    for (const auto& [key, target] : j.items()) t[parse_vertex_key(key)] = target.get<Vertex>();
    return t;
  });
}

Json improvement_to_json(const Improvement& entry, Mode mode) {
  Json j;
  j["profile_index"] = entry.profile_index;
  j["start"] = entry.start;
  j["player"] = entry.player;
  j["deviation"] = strategy_to_json(entry.deviation);
  j["improved"] = to_string(entry.improved, mode);
  return j;
}

Improvement improvement_from_json(const Json& j, Mode mode) {
  return guarded("certificate entry", [&] {
    Improvement entry;
    entry.profile_index = j.at("profile_index").get<std::uint64_t>();
    entry.start = j.at("start").get<Vertex>();
    entry.player = j.at("player").get<int>();
    entry.deviation = strategy_from_json(j.at("deviation"));
    entry.improved = parse_outcome(j.at("improved").get<std::string>(), mode);
    return entry;
  });
}

Json certificate_to_json(const Certificate& certificate, Mode mode) {
  Json j = Json::array();
  for (const auto& entry : certificate) j.push_back(improvement_to_json(entry, mode));
  return j;
}

Certificate certificate_from_json(const Json& j, Mode mode) {
  return guarded("certificate", [&] {
    if (!j.is_array()) throw Error(ErrorKind::Parse, "certificate: expected an array");
    Certificate certificate;
    for (const auto& entry : j) certificate.push_back(improvement_from_json(entry, mode));
    return certificate;
  });
}

Json ne_report(const Game& game, const StrategyProfile& s, Vertex start) {
  const Play play = resolve_play(game, s, start);
  Json j;
  j["profile"] = profile_to_json(s);
  j["start"] = start;
  j["outcome"] = to_string(play.outcome, game.mode());
  j["is_ne"] = is_ne(game, s, start);
  Json achievable = Json::object();
  for (int i = 1; i <= game.players(); ++i) {
    Json set = Json::array();
    for (Outcome o : achievable_outcomes(game, s, i, start)) set.push_back(to_string(o, game.mode()));
    achievable[std::to_string(i)] = std::move(set);
  }
  j["achievable"] = std::move(achievable);
  return j;
}

Json enum_spec_to_json(const EnumSpec& spec) {
  Json j;
  j["players"] = spec.players;
  j["min_nonterminal"] = spec.min_nonterminal;
  j["max_nonterminal"] = spec.max_nonterminal;
  j["min_terminals"] = spec.min_terminals;
  j["max_terminals"] = spec.max_terminals;
  j["max_outdeg"] = spec.max_outdeg;
  j["max_interior"] = spec.max_interior < 0 ? Json(nullptr) : Json(spec.max_interior);
  j["mode"] = to_string(spec.mode);
  j["filters"] = Json::array();
  for (auto [bit, name] : kFilterNames) {
    if (spec.filters & bit) j["filters"].push_back(name);
  }
  j["shard"] = {{"index", spec.shard.index}, {"total", spec.shard.total}};
  j["canonical_dedup"] = spec.canonical_dedup;
  return j;
}

EnumSpec enum_spec_from_json(const Json& j) {
  return guarded("spec", [&] {
    EnumSpec spec;
    spec.players = j.at("players").get<int>();
    spec.min_nonterminal = j.at("min_nonterminal").get<int>();
    spec.max_nonterminal = j.at("max_nonterminal").get<int>();
    spec.min_terminals = j.at("min_terminals").get<int>();
    spec.max_terminals = j.at("max_terminals").get<int>();
    spec.max_outdeg = j.at("max_outdeg").get<int>();
    spec.max_interior = j.at("max_interior").is_null() ? -1 : j.at("max_interior").get<int>();
    spec.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& name : j.at("filters")) {
      bool known = false;
      for (auto [bit, text] : kFilterNames) {
        if (name.get<std::string>() == text) {
          spec.filters |= bit;
          known = true;
        }
      }
      if (!known) throw Error(ErrorKind::Parse, "unknown filter " + name.dump());
    }
    spec.shard.index = j.at("shard").at("index").get<std::uint64_t>();
    spec.shard.total = j.at("shard").at("total").get<std::uint64_t>();
    spec.canonical_dedup = j.at("canonical_dedup").get<bool>();
    return spec;
  });
}

Json report_to_json(const SearchReport& report) {
  Json j;
  j["spec"] = enum_spec_to_json(report.spec);
  j["shards_covered"] = report.shards_covered;
  j["conjecture"] = report.conjecture ? Json(to_string(*report.conjecture)) : Json(nullptr);
  j["searched"] = {{"ne_free", report.ne_free_searched}, {"une_free", report.une_free_searched}};
  j["max_listed"] = report.max_listed;
  j["games_enumerated"] = report.games_enumerated;
  j["games_scanned"] = report.games_scanned;
  j["ne_free_count"] = report.ne_free_count;
  j["une_free_count"] = report.une_free_count;
  j["counterexample_count"] = report.counterexample_count;
  j["verdict"] = to_string(report.verdict());
  j["ne_free"] = Json::array();
  for (const auto& f : report.ne_free) j["ne_free"].push_back(finding_to_json(f));
  j["une_free"] = Json::array();
  for (const auto& f : report.une_free) j["une_free"].push_back(finding_to_json(f));
  j["counterexample"] = report.counterexample ? finding_to_json(*report.counterexample) : Json(nullptr);
  return j;
}

SearchReport report_from_json(const Json& j) {
  return guarded("report", [&] {
    SearchReport report;
    report.spec = enum_spec_from_json(j.at("spec"));
    report.shards_covered = j.at("shards_covered").get<std::vector<std::uint64_t>>();
    if (!j.at("conjecture").is_null()) report.conjecture = parse_conjecture(j.at("conjecture").get<std::string>());
    report.ne_free_searched = j.at("searched").at("ne_free").get<bool>();
    report.une_free_searched = j.at("searched").at("une_free").get<bool>();
    report.max_listed = j.at("max_listed").get<std::size_t>();
    report.games_enumerated = j.at("games_enumerated").get<std::uint64_t>();
    report.games_scanned = j.at("games_scanned").get<std::uint64_t>();
    report.ne_free_count = j.at("ne_free_count").get<std::uint64_t>();
    report.une_free_count = j.at("une_free_count").get<std::uint64_t>();
    report.counterexample_count = j.at("counterexample_count").get<std::uint64_t>();
    for (const auto& f : j.at("ne_free")) report.ne_free.push_back(finding_from_json(f));
    for (const auto& f : j.at("une_free")) report.une_free.push_back(finding_from_json(f));
    if (!j.at("counterexample").is_null()) report.counterexample = finding_from_json(j.at("counterexample"));
    return report;
  });
}

}  // namespace neforge
