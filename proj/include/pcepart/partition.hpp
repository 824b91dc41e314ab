#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcepart/graph.hpp"
#include "pcepart/pce.hpp"

namespace pcepart {

/// Any two-way max-cut routine. `solve` receives an induced subgraph view
/// (local indices) and a per-split seed, and must return a two-sided
/// assignment for views of two or more vertices.
struct CutSolver {
  std::string name;
  std::function<Bipartition(const Graph& view, std::uint64_t seed)> solve;
};

struct TreeNode {
  int id = 0;
  std::vector<int> vertices;  // original vertex ids, ascending
  int parent = -1;
  std::vector<int> children;  // empty or exactly two
  int split_order = -1;       // index of the split that divided this node, -1 for leaves
};

struct SplitRecord {
  int node = 0;
  double cut_value = 0.0;
  BipartitionDiagnostics diagnostics;
};

/// Recursive split history. Node 0 is the root holding every vertex.
struct PartitionTree {
  std::vector<TreeNode> nodes;
  std::vector<int> leaves;  // node ids in final queue order
  std::vector<SplitRecord> splits;

  int effective_splits() const { return static_cast<int>(splits.size()); }
  std::size_t leaf_count() const { return leaves.size(); }
};

/// Cluster label (0..L-1) per original vertex; label = position in tree.leaves.
struct ClusterLabels {
  std::vector<int> label;
  int cluster_count = 0;

  std::vector<std::vector<int>> clusters() const;
};

struct PartitionResult {
  PartitionTree tree;
  ClusterLabels labels;
};

/// FIFO recursive bipartitioning. The front subgraph is split when it has
/// more than one vertex and both halves are queued; singletons are
/// re-queued without consuming the split budget. Split s uses seed ^ s.
PartitionResult recursive_bipartition(const Graph& g, int n_splits, const CutSolver& solver,
                                      std::uint64_t seed);

ClusterLabels labels_from_tree(const PartitionTree& tree, int vertex_count);

/// Nested {id, assets, split_order, children[]} document.
nlohmann::json export_dendrogram(const PartitionTree& tree);
/// Inverse of export_dendrogram (split records are not stored and come back empty).
PartitionTree read_dendrogram(const nlohmann::json& doc);

/// "asset,label" CSV with a header row. Names default to vertex indices.
std::string labels_to_csv(const ClusterLabels& labels, const std::vector<std::string>& names = {});

}  // namespace pcepart
