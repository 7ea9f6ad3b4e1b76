#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace zz {

// Simple undirected graph, adjacency lists kept sorted.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n) : adj_(n) {}

  int size() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  long edge_count() const;
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }

  bool operator==(const SimpleGraph&) const = default;

 private:
  std::vector<std::vector<int>> adj_;
};

// BFS distances from src; -1 denotes unreachable.
std::vector<int> bfs_distances(const SimpleGraph& g, int src);

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b);

// Rooted ball of a graph: induced subgraph on N_r(center), center re-indexed.
struct GraphBall {
  SimpleGraph g;
  int center = 0;
  int radius = 0;
  std::vector<int> elements;  // original vertex ids, elements[i] = id of i
};

GraphBall graph_ball(const SimpleGraph& g, int v, int r);
bool graph_balls_isomorphic(const GraphBall& a, const GraphBall& b);

// Canonical edge-set code by minimum over all vertex permutations; n <= 8.
uint64_t canon_code(const SimpleGraph& g);

// All simple graphs on exactly n vertices with max degree <= max_deg, one per
// isomorphism class. Feasible for n <= 7 with small max_deg.
std::vector<SimpleGraph> all_graphs_up_to_iso(int n, int max_deg);

// All degree-<=2 graphs on n vertices up to isomorphism: one canonical layout
// per multiset of path sizes (>=1 vertices) and cycle sizes (>=3).
void enumerate_deg2_graphs(int n, const std::function<void(const SimpleGraph&)>& fn);
long count_deg2_multisets(int n);

// Text format: "graph <n>" then "edge u v" lines.
SimpleGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const SimpleGraph& g);

}  // namespace zz
