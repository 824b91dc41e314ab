#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcepart {

struct Edge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// Undirected weighted graph on vertices 0..n-1. Edges are stored once with i < j.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count) : n_(vertex_count) {}
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool empty() const { return n_ == 0; }

  void add_edge(int i, int j, double w);
  double total_weight() const;
  /// Sum of incident weights per vertex.
  std::vector<double> weighted_degrees() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Induced subgraph on `vertices` (local index k maps to vertices[k]).
/// Weights are inherited unchanged.
Graph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Sum of w_ij over edges whose endpoints sit on different sides.
/// Throws ContractError if `sides` does not cover the graph.
double cut_value(const Graph& g, std::span<const std::uint8_t> sides);

/// Makes a 0/1 assignment two-sided. Edgeless graphs split into first
/// half / second half by vertex order; otherwise, a one-sided assignment
/// moves the vertex with the least incident weight (lowest index on ties)
/// to the empty side. Two-sided assignments on graphs with edges pass through.
void repair_partition(const Graph& g, std::vector<std::uint8_t>& sides);

bool is_two_sided(std::span<const std::uint8_t> sides);

}  // namespace pcepart
