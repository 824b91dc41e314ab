#include "pcepart/partition.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pcepart/errors.hpp"

namespace pcepart {

std::vector<std::vector<int>> ClusterLabels::clusters() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(cluster_count));
  for (std::size_t v = 0; v < label.size(); ++v) out[static_cast<std::size_t>(label[v])].push_back(static_cast<int>(v));
  return out;
}

ClusterLabels labels_from_tree(const PartitionTree& tree, int vertex_count) {
  ClusterLabels labels;
  labels.label.assign(static_cast<std::size_t>(vertex_count), -1);
  labels.cluster_count = static_cast<int>(tree.leaves.size());
  for (std::size_t l = 0; l < tree.leaves.size(); ++l) {
    for (int v : tree.nodes[static_cast<std::size_t>(tree.leaves[l])].vertices) {
      auto& slot = labels.label.at(static_cast<std::size_t>(v));
      if (slot != -1) throw std::logic_error("vertex assigned to two leaves");
      slot = static_cast<int>(l);
    }
  }
  if (std::find(labels.label.begin(), labels.label.end(), -1) != labels.label.end()) {
    throw std::logic_error("vertex missing from partition leaves");
  }
  return labels;
}

PartitionResult recursive_bipartition(const Graph& g, int n_splits, const CutSolver& solver,
                                      std::uint64_t seed) {
  const int n = g.vertex_count();
  if (n_splits < 1) throw ContractError("n_splits must be >= 1, got " + std::to_string(n_splits));
  if (n_splits + 1 > n) {
    throw ContractError("n_splits = " + std::to_string(n_splits) + " needs at least " +
                        std::to_string(n_splits + 1) + " vertices, graph has " + std::to_string(n));
  }
  if (!solver.solve) throw ContractError("cut solver '" + solver.name + "' has no solve function");

  PartitionResult result;
  PartitionTree& tree = result.tree;
  TreeNode root;
  root.vertices.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) root.vertices[static_cast<std::size_t>(v)] = v;
  tree.nodes.push_back(root);

  std::deque<int> queue{0};
  auto size_of = [&](int id) { return tree.nodes[static_cast<std::size_t>(id)].vertices.size(); };

  while (tree.effective_splits() < n_splits) {
    if (std::all_of(queue.begin(), queue.end(), [&](int id) { return size_of(id) <= 1; })) break;
    const int front = queue.front();
    queue.pop_front();
    if (size_of(front) <= 1) {
      queue.push_back(front);
      continue;
    }

    const std::vector<int> members = tree.nodes[static_cast<std::size_t>(front)].vertices;
    const Graph view = induced_subgraph(g, members);
    const int split_index = tree.effective_splits();
    Bipartition bp = solver.solve(view, seed ^ static_cast<std::uint64_t>(split_index));
    if (bp.sides.size() != members.size() || !is_two_sided(bp.sides)) {
      throw std::logic_error("cut solver '" + solver.name + "' returned an invalid bipartition");
    }

    TreeNode first, second;
    for (std::size_t k = 0; k < members.size(); ++k) {
      (bp.sides[k] ? first : second).vertices.push_back(members[k]);
    }
    for (TreeNode* child : {&first, &second}) {
      child->id = static_cast<int>(tree.nodes.size());
      child->parent = front;
      tree.nodes[static_cast<std::size_t>(front)].children.push_back(child->id);
      tree.nodes.push_back(*child);
      queue.push_back(child->id);
    }
    tree.nodes[static_cast<std::size_t>(front)].split_order = split_index;
    tree.splits.push_back({front, cut_value(view, bp.sides), bp.diagnostics});
  }

  tree.leaves.assign(queue.begin(), queue.end());
  result.labels = labels_from_tree(tree, n);
  return result;
}

nlohmann::json export_dendrogram(const PartitionTree& tree) {
  if (tree.nodes.empty()) return nlohmann::json::object();
  std::vector<int> leaf_label(tree.nodes.size(), -1);
  for (std::size_t l = 0; l < tree.leaves.size(); ++l) leaf_label[static_cast<std::size_t>(tree.leaves[l])] = static_cast<int>(l);

  std::function<nlohmann::json(int)> emit = [&](int id) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
    nlohmann::json j;
    j["id"] = node.id;
    j["assets"] = node.vertices;
    j["split_order"] = node.split_order;
    nlohmann::json kids = nlohmann::json::array();
    for (int c : node.children) kids.push_back(emit(c));
    j["children"] = kids;
    if (node.children.empty()) j["label"] = leaf_label[static_cast<std::size_t>(id)];
    return j;
  };
  return emit(0);
}

PartitionTree read_dendrogram(const nlohmann::json& doc) {
  PartitionTree tree;
  std::vector<std::pair<int, int>> labelled;  // (label, id)
  std::function<void(const nlohmann::json&, int)> walk = [&](const nlohmann::json& j, int parent) {
    TreeNode node;
    node.id = j.at("id").get<int>();
    node.vertices = j.at("assets").get<std::vector<int>>();
    node.split_order = j.at("split_order").get<int>();
    node.parent = parent;
    for (const auto& c : j.at("children")) node.children.push_back(c.at("id").get<int>());
    if (node.id < 0) throw DataError("dendrogram: negative node id");
    if (tree.nodes.size() <= static_cast<std::size_t>(node.id)) tree.nodes.resize(static_cast<std::size_t>(node.id) + 1);
    if (node.children.empty()) labelled.emplace_back(j.at("label").get<int>(), node.id);
    tree.nodes[static_cast<std::size_t>(node.id)] = node;
    for (const auto& c : j.at("children")) walk(c, node.id);
  };
  try {
    if (!doc.empty()) walk(doc, -1);
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed dendrogram JSON: ") + ex.what());
  }
  std::sort(labelled.begin(), labelled.end());
  for (const auto& [label, id] : labelled) tree.leaves.push_back(id);
  return tree;
}

std::string labels_to_csv(const ClusterLabels& labels, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "asset,label\n";
  for (std::size_t v = 0; v < labels.label.size(); ++v) {
    if (v < names.size()) {
      os << names[v];
    } else {
      os << v;
    }
    os << ',' << labels.label[v] << '\n';
  }
  return os.str();
}

}  // namespace pcepart
