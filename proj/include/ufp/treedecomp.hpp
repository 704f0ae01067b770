#pragma once

#include <string>
#include <vector>

#include "ufp/core.hpp"

namespace ufp {

/// Rooted tree decomposition. Bags are sorted vertex lists; `parent[root] == -1`.
struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<int> parent;

  int node_count() const { return static_cast<int>(bags.size()); }
  int width() const;
  int root() const;
  std::vector<std::vector<int>> children() const;
};

enum class NodeKind { Leaf, Introduce, Forget, Join };

std::string to_string(NodeKind kind);

struct NiceNode {
  NodeKind kind = NodeKind::Leaf;
  Vertex vertex = -1;  // introduced / forgotten vertex
  std::vector<Vertex> bag;
  std::vector<int> children;
};

/// Nodes are stored so that every child precedes its parent; the root is the last node.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int root() const { return node_count() - 1; }
  int width() const;
  TreeDecomposition as_plain() const;
};

struct ValidationResult {
  bool valid = true;
  std::vector<std::string> violations;
};

ValidationResult validate(const CapacitatedGraph& graph, const TreeDecomposition& td);
/// Also checks the leaf/introduce/forget/join constraints and the empty root bag.
ValidationResult validate(const CapacitatedGraph& graph, const NiceTreeDecomposition& td);

enum class DecompositionMode { Heuristic, ExactSmall };

/// Heuristic: min-fill elimination. ExactSmall: minimum width over all elimination
/// orders (subset dynamic program); throws LimitExceeded above `exact_limit` vertices.
TreeDecomposition compute_decomposition(const CapacitatedGraph& graph, DecompositionMode mode,
                                        int exact_limit = 16);

/// Decomposition induced by eliminating vertices in `order`.
TreeDecomposition decomposition_from_order(const CapacitatedGraph& graph, const std::vector<Vertex>& order);

/// Exact treewidth for small graphs (same search as ExactSmall).
int exact_treewidth(const CapacitatedGraph& graph, int exact_limit = 16);

/// Throws InputError if `td` is not a valid decomposition of `graph`.
NiceTreeDecomposition to_nice(const CapacitatedGraph& graph, const TreeDecomposition& td);

/// Boundary sets per nice node. All lists are sorted.
struct BoundaryView {
  int max_route_length = 0;
  std::vector<std::vector<Vertex>> past;
  std::vector<std::vector<EdgeId>> present;
  std::vector<std::vector<Vertex>> vis;
  std::vector<std::vector<EdgeId>> e_vis;
  std::vector<std::vector<char>> in_past;  // [node][vertex]

  bool is_past(int node, Vertex v) const { return in_past[node][v] != 0; }
};

BoundaryView boundary_view(const CapacitatedGraph& graph, const NiceTreeDecomposition& td, int max_route_length);

}  // namespace ufp
