#include "neforge/dot.hpp"

#include <set>
#include <sstream>

namespace neforge {

namespace {

std::string render(const Digraph& g, const GameForm* form, const StrategyProfile* profile,
                   std::optional<Vertex> start) {
  const SccPartition scc = form ? form->scc() : scc_decompose(g);
  std::set<Edge> play_edges;
  if (form && profile && start) {
    const Play play = resolve_play(*form, *profile, *start);
    for (std::size_t k = 0; k + 1 < play.path.size(); ++k) play_edges.emplace(play.path[k], play.path[k + 1]);
    if (play.shape == Play::Shape::Lasso) play_edges.emplace(play.path.back(), play.path[play.cycle_start]);
  }

  std::ostringstream out;
  out << "digraph G {\n  node [shape=circle];\n";
  for (std::size_t c = 0; c < scc.size(); ++c) {
    out << "  subgraph cluster_" << c << " {\n    label=\"" << to_string(scc.scc_class[c]);
    if (form && form->component_outcome_id(static_cast<int>(c)) >= 0) {
      out << " " << to_string(form->outcome_at(form->component_outcome_id(static_cast<int>(c))), form->mode());
    }
    out << "\";\n";
    for (Vertex v : scc.components[c]) {
      out << "    " << v << " [label=\"" << v;
      if (form && !g.is_terminal(v)) out << "\\nP" << form->owner(v);
      out << "\"";
      if (g.is_terminal(v)) out << ", shape=box";
      if (form && form->initial() == v) out << ", peripheries=2";
      out << "];\n";
    }
    out << "  }\n";
  }
  for (auto [u, v] : g.edges()) {
    out << "  " << u << " -> " << v;
    std::string attrs;
    if (profile && (*profile)[u] == v) attrs += "style=bold";
    if (play_edges.contains({u, v})) attrs += std::string(attrs.empty() ? "" : ", ") + "color=red";
    if (!attrs.empty()) out << " [" << attrs << "]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string to_dot(const Digraph& g) { return render(g, nullptr, nullptr, std::nullopt); }

std::string to_dot(const GameForm& form, const StrategyProfile* profile, std::optional<Vertex> start) {
  if (profile) check_profile(form, *profile);
  if (!start) start = form.initial();
  return render(form.graph(), &form, profile, start);
}

}  // namespace neforge
