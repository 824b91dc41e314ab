#include "pcepart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pcepart/errors.hpp"

namespace pcepart {

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (vertex_count < 0) throw ContractError("negative vertex count");
  edges_.reserve(edges.size());
  for (const Edge& e : edges) add_edge(e.i, e.j, e.w);
}

void Graph::add_edge(int i, int j, double w) {
  if (i == j) throw ContractError("self-loop on vertex " + std::to_string(i));
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw ContractError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for " + std::to_string(n_) + " vertices");
  }
  if (!std::isfinite(w)) throw ContractError("non-finite weight on edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (i > j) std::swap(i, j);
  edges_.push_back({i, j, w});
}

double Graph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

std::vector<double> Graph::weighted_degrees() const {
  std::vector<double> deg(static_cast<std::size_t>(n_), 0.0);
  for (const Edge& e : edges_) {
    deg[static_cast<std::size_t>(e.i)] += e.w;
    deg[static_cast<std::size_t>(e.j)] += e.w;
  }
  return deg;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const int v = vertices[k];
    if (v < 0 || v >= g.vertex_count()) {
      throw ContractError("induced_subgraph: vertex " + std::to_string(v) + " out of range");
    }
    if (local[static_cast<std::size_t>(v)] >= 0) {
      throw ContractError("induced_subgraph: duplicate vertex " + std::to_string(v));
    }
    local[static_cast<std::size_t>(v)] = static_cast<int>(k);
  }
  Graph sub(static_cast<int>(vertices.size()));
  for (const Edge& e : g.edges()) {
    const int a = local[static_cast<std::size_t>(e.i)];
    const int b = local[static_cast<std::size_t>(e.j)];
    if (a >= 0 && b >= 0) sub.add_edge(a, b, e.w);
  }
  return sub;
}

double cut_value(const Graph& g, std::span<const std::uint8_t> sides) {
  if (sides.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw ContractError("cut_value: assignment has " + std::to_string(sides.size()) +
                        " entries for " + std::to_string(g.vertex_count()) + " vertices");
  }
  double cut = 0.0;
  for (const Edge& e : g.edges()) {
    if (sides[static_cast<std::size_t>(e.i)] != sides[static_cast<std::size_t>(e.j)]) cut += e.w;
  }
  return cut;
}

bool is_two_sided(std::span<const std::uint8_t> sides) {
  bool zero = false, one = false;
  for (auto s : sides) (s ? one : zero) = true;
  return zero && one;
}

void repair_partition(const Graph& g, std::vector<std::uint8_t>& sides) {
  const int n = g.vertex_count();
  if (sides.size() != static_cast<std::size_t>(n)) {
    throw ContractError("repair_partition: assignment does not cover the graph");
  }
  if (n < 2) return;
  if (g.edge_count() == 0) {
    for (int v = 0; v < n; ++v) sides[static_cast<std::size_t>(v)] = v < n / 2 ? 0 : 1;
    return;
  }
  if (is_two_sided(sides)) return;
  const auto deg = g.weighted_degrees();
  const auto it = std::min_element(deg.begin(), deg.end());
  const auto v = static_cast<std::size_t>(it - deg.begin());
  sides[v] = sides[v] ? 0 : 1;
}

}  // namespace pcepart
