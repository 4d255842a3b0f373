#include "neforge/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "neforge/error.hpp"

namespace neforge {

Digraph::Digraph(std::size_t vertex_count) : offsets_(vertex_count + 1, 0) {}

Digraph::Digraph(std::size_t vertex_count, std::span<const Edge> edges) {
  std::vector<std::vector<Vertex>> adjacency(vertex_count);
  const auto n = static_cast<Vertex>(vertex_count);
  for (const auto& [from, to] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw Error(ErrorKind::InvalidGraph, "edge (" + std::to_string(from) + ", " + std::to_string(to) +
                                               ") out of range for " + std::to_string(vertex_count) + " vertices");
    }
    adjacency[from].push_back(to);
  }
  *this = from_adjacency(adjacency);
}

Digraph Digraph::from_adjacency(const std::vector<std::vector<Vertex>>& successors) {
  Digraph g;
  const auto n = static_cast<Vertex>(successors.size());
  g.offsets_.assign(successors.size() + 1, 0);
  g.targets_.clear();
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> row = successors[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    for (Vertex w : row) {
      if (w < 0 || w >= n) {
        throw Error(ErrorKind::InvalidGraph, "successor " + std::to_string(w) + " of vertex " + std::to_string(v) +
                                                 " out of range");
      }
    }
    g.targets_.insert(g.targets_.end(), row.begin(), row.end());
    g.offsets_[v + 1] = g.targets_.size();
  }
  return g;
}

bool Digraph::has_edge(Vertex from, Vertex to) const noexcept {
  auto succ = successors(from);
  return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    for (Vertex w : successors(v)) out.emplace_back(v, w);
  }
  return out;
}

std::vector<Vertex> Digraph::terminals() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    if (is_terminal(v)) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> Digraph::non_terminals() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v) {
    if (!is_terminal(v)) out.push_back(v);
  }
  return out;
}

const char* to_string(SccClass c) {
  switch (c) {
    case SccClass::Terminal: return "terminal";
    case SccClass::Interior: return "interior";
    case SccClass::Transient: return "transient";
  }
  return "?";
}

SccPartition scc_decompose(const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<int> index(n, -1), low(n, 0), raw_component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  // (vertex, position in successor list)
  std::vector<std::pair<Vertex, std::size_t>> call;
  int counter = 0, raw_count = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto succ = g.successors(v);
      if (pos < succ.size()) {
        Vertex w = succ[pos++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_component[w] = raw_count;
        } while (w != done);
        ++raw_count;
      }
    }
  }

  // Renumber by smallest member: scanning vertices in order meets each
  // component first at its minimum.
  std::vector<int> renumber(raw_count, -1);
  SccPartition part;
  part.component_of.assign(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    int& id = renumber[raw_component[v]];
    if (id == -1) {
      id = static_cast<int>(part.components.size());
      part.components.emplace_back();
    }
    part.component_of[v] = id;
    part.components[id].push_back(v);
  }

  const std::size_t count = part.components.size();
  part.scc_class.assign(count, SccClass::Transient);
  part.cyclic.assign(count, false);
  std::vector<std::vector<Vertex>> cond(count);
  std::vector<bool> has_exit(count, false);
  for (Vertex v = 0; v < n; ++v) {
    const int c = part.component_of[v];
    for (Vertex w : g.successors(v)) {
      const int d = part.component_of[w];
      if (d == c) {
        part.cyclic[c] = true;
      } else {
        has_exit[c] = true;
        cond[c].push_back(d);
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c) {
    if (part.components[c].size() > 1) part.cyclic[c] = true;
    if (!has_exit[c]) {
      part.scc_class[c] = SccClass::Terminal;
    } else if (part.cyclic[c]) {
      part.scc_class[c] = SccClass::Interior;
    }
  }
  part.condensation = Digraph::from_adjacency(cond);
  return part;
}

std::optional<std::vector<Vertex>> topological_order(const Digraph& g) {
  const auto n = static_cast<Vertex>(g.vertex_count());
  std::vector<int> indegree(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.successors(v)) ++indegree[w];
  }
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex w : g.successors(order[head])) {
      if (--indegree[w] == 0) order.push_back(w);
    }
  }
  if (order.size() != static_cast<std::size_t>(n)) return std::nullopt;
  return order;
}

bool is_acyclic(const Digraph& g) { return topological_order(g).has_value(); }

bool is_bidirected(const Digraph& g) {
  for (const auto& [u, v] : g.edges()) {
    if (g.is_terminal(v)) continue;
    if (!g.has_edge(v, u)) return false;
  }
  return true;
}

std::vector<bool> reachable_from(const Digraph& g, Vertex from) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> queue{from};
  seen[from] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex w : g.successors(queue[head])) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

Contraction contract_terminal_sccs(const Digraph& g) {
  const SccPartition part = scc_decompose(g);
  const auto n = static_cast<Vertex>(g.vertex_count());
  Contraction out;
  out.vertex_map.assign(n, -1);
  std::vector<Vertex> component_vertex(part.size(), -1);
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    const int c = part.component_of[v];
    if (part.scc_class[c] == SccClass::Terminal) {
      if (component_vertex[c] == -1) component_vertex[c] = next++;
      out.vertex_map[v] = component_vertex[c];
    } else {
      out.vertex_map[v] = next++;
    }
  }
  std::vector<std::vector<Vertex>> adjacency(next);
  for (Vertex v = 0; v < n; ++v) {
    if (part.scc_class[part.component_of[v]] == SccClass::Terminal) continue;
    for (Vertex w : g.successors(v)) adjacency[out.vertex_map[v]].push_back(out.vertex_map[w]);
  }
  out.graph = Digraph::from_adjacency(adjacency);
  return out;
}

namespace {

void check_substitute(Vertex at, const Substitute& sub) {
  const auto size = static_cast<Vertex>(sub.graph.vertex_count());
  const std::string where = "substitute for vertex " + std::to_string(at);
  if (size == 0) throw Error(ErrorKind::InvalidGraph, where + " is empty");
  if (sub.entry < 0 || sub.entry >= size) throw Error(ErrorKind::InvalidGraph, where + ": entry out of range");
  for (Vertex x : sub.exits) {
    if (x < 0 || x >= size) throw Error(ErrorKind::InvalidGraph, where + ": exit out of range");
  }
  const SccPartition part = scc_decompose(sub.graph);
  if (part.size() != 1 || !part.cyclic[0]) {
    throw Error(ErrorKind::InvalidGraph, where + " must be strongly connected and contain a cycle");
  }
}

}  // namespace

Inflation inflate(const Digraph& base, const std::map<Vertex, Substitute>& substitutes) {
  if (!is_acyclic(base)) throw Error(ErrorKind::InvalidGraph, "inflate: base digraph has a directed cycle");
  const auto n = static_cast<Vertex>(base.vertex_count());
  for (const auto& [v, sub] : substitutes) {
    if (v < 0 || v >= n) throw Error(ErrorKind::InvalidGraph, "inflate: substituted vertex out of range");
    if (base.is_terminal(v)) {
      throw Error(ErrorKind::InvalidGraph, "inflate: cannot substitute terminal vertex " + std::to_string(v));
    }
    check_substitute(v, sub);
  }

  Inflation out;
  out.blocks.resize(n);
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto it = substitutes.find(v);
    const std::size_t size = it == substitutes.end() ? 1 : it->second.graph.vertex_count();
    for (std::size_t k = 0; k < size; ++k) out.blocks[v].push_back(next++);
  }
  auto entry_of = [&](Vertex v) {
    auto it = substitutes.find(v);
    return it == substitutes.end() ? out.blocks[v][0] : out.blocks[v][it->second.entry];
  };

  std::vector<std::vector<Vertex>> adjacency(next);
  for (Vertex v = 0; v < n; ++v) {
    auto it = substitutes.find(v);
    std::vector<Vertex> sources;
    if (it == substitutes.end()) {
      sources.push_back(out.blocks[v][0]);
    } else {
      const Substitute& sub = it->second;
      for (const auto& [a, b] : sub.graph.edges()) adjacency[out.blocks[v][a]].push_back(out.blocks[v][b]);
      if (sub.exits.empty()) {
        sources = out.blocks[v];
      } else {
        for (Vertex x : sub.exits) sources.push_back(out.blocks[v][x]);
      }
    }
    for (Vertex w : base.successors(v)) {
      for (Vertex s : sources) adjacency[s].push_back(entry_of(w));
    }
  }
  out.graph = Digraph::from_adjacency(adjacency);
  return out;
}

}  // namespace neforge
