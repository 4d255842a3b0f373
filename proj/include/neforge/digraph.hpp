#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace neforge {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Finite digraph in compressed adjacency form. Successor lists are sorted and
/// duplicate-free; self-loops are allowed. A vertex is terminal exactly when it
/// has no outgoing edge, so terminality is never stored.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t vertex_count);
  /// Duplicate edges are coalesced; throws Error(InvalidGraph) on out-of-range endpoints.
  Digraph(std::size_t vertex_count, std::span<const Edge> edges);

  static Digraph from_adjacency(const std::vector<std::vector<Vertex>>& successors);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const Vertex> successors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool is_terminal(Vertex v) const noexcept { return offsets_[v] == offsets_[v + 1]; }
  bool has_edge(Vertex from, Vertex to) const noexcept;

  std::vector<Edge> edges() const;
  std::vector<Vertex> terminals() const;
  std::vector<Vertex> non_terminals() const;

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

enum class SccClass { Terminal, Interior, Transient };

const char* to_string(SccClass c);

/// Strongly connected components numbered by smallest member vertex.
struct SccPartition {
  std::vector<int> component_of;
  std::vector<std::vector<Vertex>> components;
  std::vector<SccClass> scc_class;
  /// Component contains a directed cycle. Closed (Terminal) components may too.
  std::vector<bool> cyclic;
  Digraph condensation;

  std::size_t size() const noexcept { return components.size(); }
};

SccPartition scc_decompose(const Digraph& g);

/// Kahn order; empty optional when the graph has a directed cycle (self-loops included).
std::optional<std::vector<Vertex>> topological_order(const Digraph& g);
bool is_acyclic(const Digraph& g);

bool is_bidirected(const Digraph& g);

/// Vertices reachable from `from` (including it).
std::vector<bool> reachable_from(const Digraph& g, Vertex from);

struct Contraction {
  Digraph graph;
  /// Old vertex to new vertex; every member of a terminal SCC maps to the same sink.
  std::vector<Vertex> vertex_map;
};

/// New ids follow the order of each surviving vertex (or contracted component's
/// smallest member) in the input, so an already contracted graph maps to itself.
Contraction contract_terminal_sccs(const Digraph& g);

struct Substitute {
  Digraph graph;
  Vertex entry = 0;
  /// Vertices that inherit the replaced vertex's out-edges; empty means all.
  std::vector<Vertex> exits;
};

struct Inflation {
  Digraph graph;
  /// Base vertex to the block of result vertices that replaced it (size 1 when kept).
  std::vector<std::vector<Vertex>> blocks;
};

/// Replaces non-terminal vertices of an acyclic base by strongly connected
/// cyclic digraphs. Incoming edges land on the substitute's entry; each outgoing
/// base edge is replicated from every exit vertex. Blocks are laid out in base
/// vertex order.
Inflation inflate(const Digraph& base, const std::map<Vertex, Substitute>& substitutes);

}  // namespace neforge
