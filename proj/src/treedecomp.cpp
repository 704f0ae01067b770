#include "ufp/treedecomp.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace ufp {

int TreeDecomposition::width() const {
  int w = 0;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
  return w - 1;
}

int TreeDecomposition::root() const {
  for (int i = 0; i < node_count(); ++i)
    if (parent[i] == -1) return i;
  return -1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
  std::vector<std::vector<int>> out(node_count());
  for (int i = 0; i < node_count(); ++i)
    if (parent[i] >= 0 && parent[i] < node_count()) out[parent[i]].push_back(i);
  return out;
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Leaf: return "leaf";
    case NodeKind::Introduce: return "introduce";
    case NodeKind::Forget: return "forget";
    case NodeKind::Join: return "join";
  }
  return "unknown";
}

int NiceTreeDecomposition::width() const {
  int w = 0;
  for (const auto& n : nodes) w = std::max(w, static_cast<int>(n.bag.size()));
  return w - 1;
}

TreeDecomposition NiceTreeDecomposition::as_plain() const {
  TreeDecomposition td;
  td.bags.reserve(nodes.size());
  td.parent.assign(nodes.size(), -1);
  for (int i = 0; i < node_count(); ++i) {
    td.bags.push_back(nodes[i].bag);
    for (int c : nodes[i].children)
      if (c >= 0 && c < node_count()) td.parent[c] = i;
  }
  return td;
}

ValidationResult validate(const CapacitatedGraph& graph, const TreeDecomposition& td) {
  ValidationResult r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  const int nodes = td.node_count();
  if (nodes == 0) {
    fail("decomposition has no nodes");
    return r;
  }
  if (static_cast<int>(td.parent.size()) != nodes) {
    fail("parent array size mismatch");
    return r;
  }
  int roots = 0;
  for (int i = 0; i < nodes; ++i) {
    if (td.parent[i] == -1) ++roots;
    else if (td.parent[i] < 0 || td.parent[i] >= nodes || td.parent[i] == i) fail("node " + std::to_string(i) + ": bad parent");
  }
  if (roots != 1) fail("expected exactly one root, found " + std::to_string(roots));
  if (!r.valid) return r;
  for (int i = 0; i < nodes; ++i) {
    int steps = 0;
    for (int x = i; x != -1; x = td.parent[x]) {
      if (++steps > nodes) {
        fail("parent pointers contain a cycle");
        return r;
      }
    }
  }

  const int n = graph.vertex_count();
  std::vector<std::vector<char>> member(nodes, std::vector<char>(n, 0));
  for (int i = 0; i < nodes; ++i) {
    for (Vertex v : td.bags[i]) {
      if (v < 0 || v >= n) {
        fail("node " + std::to_string(i) + ": vertex " + std::to_string(v) + " out of range");
        continue;
      }
      if (member[i][v]) fail("node " + std::to_string(i) + ": vertex " + std::to_string(v) + " repeated");
      member[i][v] = 1;
    }
  }
  for (const Edge& e : graph.edges()) {
    bool covered = false;
    for (int i = 0; i < nodes && !covered; ++i) covered = member[i][e.u] && member[i][e.v];
    if (!covered) fail("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is not covered by any bag");
  }
  for (Vertex v = 0; v < n; ++v) {
    int tops = 0;
    for (int i = 0; i < nodes; ++i) {
      if (!member[i][v]) continue;
      int p = td.parent[i];
      if (p == -1 || !member[p][v]) ++tops;
    }
    if (tops == 0) fail("vertex " + std::to_string(v) + " appears in no bag");
    else if (tops > 1) fail("bags containing vertex " + std::to_string(v) + " are disconnected");
  }
  return r;
}

ValidationResult validate(const CapacitatedGraph& graph, const NiceTreeDecomposition& td) {
  ValidationResult r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  const int nodes = td.node_count();
  if (nodes == 0) {
    fail("decomposition has no nodes");
    return r;
  }
  std::vector<int> parent_count(nodes, 0);
  for (int i = 0; i < nodes; ++i) {
    for (int c : td.nodes[i].children) {
      if (c < 0 || c >= i) {
        fail("node " + std::to_string(i) + ": child " + std::to_string(c) + " does not precede its parent");
        continue;
      }
      ++parent_count[c];
    }
  }
  for (int i = 0; i + 1 < nodes; ++i)
    if (parent_count[i] != 1) fail("node " + std::to_string(i) + " has " + std::to_string(parent_count[i]) + " parents");
  if (parent_count[nodes - 1] != 0) fail("root has a parent");
  if (!r.valid) return r;

  ValidationResult plain = validate(graph, td.as_plain());
  for (auto& v : plain.violations) fail(std::move(v));

  const bool empty_graph = graph.vertex_count() == 0;
  if (!td.nodes.back().bag.empty()) fail("root bag is not empty");
  for (int i = 0; i < nodes; ++i) {
    const NiceNode& node = td.nodes[i];
    std::string where = "node " + std::to_string(i) + " (" + to_string(node.kind) + ")";
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) fail(where + ": bag not sorted");
    switch (node.kind) {
      case NodeKind::Leaf:
        if (!node.children.empty()) fail(where + ": leaf with children");
        if (node.bag.size() != 1 && !(empty_graph && nodes == 1)) fail(where + ": leaf bag size must be 1");
        break;
      case NodeKind::Introduce:
      case NodeKind::Forget: {
        if (node.children.size() != 1) {
          fail(where + ": needs exactly one child");
          break;
        }
        const auto& child = td.nodes[node.children[0]].bag;
        const auto& big = node.kind == NodeKind::Introduce ? node.bag : child;
        const auto& small = node.kind == NodeKind::Introduce ? child : node.bag;
        std::vector<Vertex> expect = small;
        if (std::find(small.begin(), small.end(), node.vertex) != small.end()) {
          fail(where + ": vertex " + std::to_string(node.vertex) + " already present on the small side");
          break;
        }
        expect.push_back(node.vertex);
        std::sort(expect.begin(), expect.end());
        if (expect != big) fail(where + ": bags differ by more than vertex " + std::to_string(node.vertex));
        break;
      }
      case NodeKind::Join:
        if (node.children.size() != 2) {
          fail(where + ": needs exactly two children");
          break;
        }
        if (td.nodes[node.children[0]].bag != node.bag || td.nodes[node.children[1]].bag != node.bag)
          fail(where + ": children bags differ");
        break;
    }
  }
  return r;
}

TreeDecomposition decomposition_from_order(const CapacitatedGraph& graph, const std::vector<Vertex>& order) {
  const int n = graph.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.bags = {{}};
    td.parent = {-1};
    return td;
  }
  if (static_cast<int>(order.size()) != n) throw InputError("elimination order has wrong length");
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || position[order[i]] != -1) throw InputError("elimination order is not a permutation");
    position[order[i]] = i;
  }
  std::vector<std::set<Vertex>> adj(n);
  for (const Edge& e : graph.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  td.bags.resize(n);
  td.parent.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    Vertex v = order[i];
    std::vector<Vertex> later(adj[v].begin(), adj[v].end());
    std::vector<Vertex> bag = later;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    td.bags[i] = std::move(bag);
    int first = -1;
    for (Vertex w : later)
      if (first == -1 || position[w] < first) first = position[w];
    td.parent[i] = first;
    for (Vertex a : later) {
      adj[a].erase(v);
      for (Vertex b : later)
        if (a != b) adj[a].insert(b);
    }
    adj[v].clear();
  }
  // Eliminating a disconnected graph yields a forest; hang every tree below the last node.
  for (int i = 0; i + 1 < n; ++i)
    if (td.parent[i] == -1) td.parent[i] = n - 1;
  return td;
}

namespace {

std::vector<Vertex> min_fill_order(const CapacitatedGraph& graph) {
  const int n = graph.vertex_count();
  std::vector<std::set<Vertex>> adj(n);
  for (const Edge& e : graph.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<char> gone(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    long best_fill = 0;
    int best_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b)) ++fill;
      int deg = static_cast<int>(adj[v].size());
      if (best == -1 || fill < best_fill || (fill == best_fill && deg < best_deg)) {
        best = v;
        best_fill = fill;
        best_deg = deg;
      }
    }
    gone[best] = 1;
    order.push_back(best);
    std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
    for (Vertex a : nb) {
      adj[a].erase(best);
      for (Vertex b : nb)
        if (a != b) adj[a].insert(b);
    }
    adj[best].clear();
  }
  return order;
}

// Minimum-width elimination order by dynamic programming over eliminated sets:
// TW(S) = min_{v in S} max(TW(S \ v), |Q(S \ v, v)|), where Q(S, v) holds the
// vertices outside S + v reachable from v through S.
std::vector<Vertex> exact_order(const CapacitatedGraph& graph, int exact_limit) {
  const int n = graph.vertex_count();
  if (n > exact_limit || n > 24)
    throw LimitExceeded("exact decomposition limited to " + std::to_string(std::min(exact_limit, 24)) +
                        " vertices, graph has " + std::to_string(n));
  if (n == 0) return {};
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : graph.edges()) {
    nbr[e.u] |= 1u << e.v;
    nbr[e.v] |= 1u << e.u;
  }
  auto q_size = [&](std::uint32_t s, int v) {
    std::uint32_t seen = (1u << v);
    std::uint32_t frontier = nbr[v] & ~seen;
    std::uint32_t reach = 0;
    while (frontier) {
      reach |= frontier;
      seen |= frontier;
      std::uint32_t inside = frontier & s;
      std::uint32_t next = 0;
      for (std::uint32_t m = inside; m; m &= m - 1) next |= nbr[__builtin_ctz(m)];
      frontier = next & ~seen;
    }
    return __builtin_popcount(reach & ~s);
  };
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
  std::vector<std::int8_t> tw(std::size_t{full} + 1, std::numeric_limits<std::int8_t>::max());
  std::vector<std::int8_t> choice(std::size_t{full} + 1, -1);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::uint32_t m = s; m; m &= m - 1) {
      int v = __builtin_ctz(m);
      std::uint32_t rest = s & ~(1u << v);
      int val = std::max<int>(tw[rest], q_size(rest, v));
      if (val < tw[s]) {
        tw[s] = static_cast<std::int8_t>(val);
        choice[s] = static_cast<std::int8_t>(v);
      }
    }
  }
  std::vector<Vertex> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = choice[s];
    s &= ~(1u << choice[s]);
  }
  return order;
}

}  // namespace

TreeDecomposition compute_decomposition(const CapacitatedGraph& graph, DecompositionMode mode, int exact_limit) {
  if (mode == DecompositionMode::ExactSmall) return decomposition_from_order(graph, exact_order(graph, exact_limit));
  return decomposition_from_order(graph, min_fill_order(graph));
}

int exact_treewidth(const CapacitatedGraph& graph, int exact_limit) {
  return compute_decomposition(graph, DecompositionMode::ExactSmall, exact_limit).width();
}

NiceTreeDecomposition to_nice(const CapacitatedGraph& graph, const TreeDecomposition& input) {
  ValidationResult check = validate(graph, input);
  if (!check.valid) throw InputError("invalid tree decomposition: " + check.violations.front());

  NiceTreeDecomposition out;
  auto push = [&](NiceNode node) {
    out.nodes.push_back(std::move(node));
    return out.node_count() - 1;
  };
  auto change_bag = [&](int at, const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
    std::vector<Vertex> bag = from;
    for (Vertex v : from) {
      if (std::binary_search(to.begin(), to.end(), v)) continue;
      bag.erase(std::find(bag.begin(), bag.end(), v));
      at = push(NiceNode{NodeKind::Forget, v, bag, {at}});
    }
    for (Vertex v : to) {
      if (std::binary_search(from.begin(), from.end(), v)) continue;
      bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
      at = push(NiceNode{NodeKind::Introduce, v, bag, {at}});
    }
    return at;
  };

  std::vector<std::vector<Vertex>> bags = input.bags;
  for (auto& b : bags) std::sort(b.begin(), b.end());
  auto children = input.children();

  // Returns a nice node whose bag equals bags[node], or -1 if the subtree holds no vertex.
  std::function<int(int)> build = [&](int node) -> int {
    std::vector<int> tops;
    for (int c : children[node]) {
      int sub = build(c);
      if (sub == -1) continue;
      tops.push_back(change_bag(sub, bags[c], bags[node]));
    }
    if (tops.empty()) {
      if (bags[node].empty()) return -1;
      std::vector<Vertex> start{bags[node].front()};
      int leaf = push(NiceNode{NodeKind::Leaf, -1, start, {}});
      return change_bag(leaf, start, bags[node]);
    }
    int acc = tops.front();
    for (std::size_t i = 1; i < tops.size(); ++i) acc = push(NiceNode{NodeKind::Join, -1, bags[node], {acc, tops[i]}});
    return acc;
  };

  int root = input.root();
  int top = build(root);
  if (top == -1) {
    push(NiceNode{NodeKind::Leaf, -1, {}, {}});
    return out;
  }
  change_bag(top, bags[root], {});
  return out;
}

BoundaryView boundary_view(const CapacitatedGraph& graph, const NiceTreeDecomposition& td, int max_route_length) {
  const int nodes = td.node_count();
  const int n = graph.vertex_count();
  BoundaryView view;
  view.max_route_length = max_route_length;
  view.past.resize(nodes);
  view.present.resize(nodes);
  view.vis.resize(nodes);
  view.e_vis.resize(nodes);
  view.in_past.assign(nodes, std::vector<char>(n, 0));

  std::vector<std::vector<char>> below(nodes, std::vector<char>(n, 0));
  for (int t = 0; t < nodes; ++t) {
    const NiceNode& node = td.nodes[t];
    for (int c : node.children)
      for (Vertex v = 0; v < n; ++v) below[t][v] |= below[c][v];
    for (Vertex v : node.bag) below[t][v] = 1;

    std::vector<char> in_bag(n, 0);
    for (Vertex v : node.bag) in_bag[v] = 1;
    for (Vertex v = 0; v < n; ++v) {
      if (below[t][v] && !in_bag[v]) {
        view.in_past[t][v] = 1;
        view.past[t].push_back(v);
      }
    }
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      const Edge& edge = graph.edge(e);
      if (view.in_past[t][edge.u] != view.in_past[t][edge.v]) view.present[t].push_back(e);
    }

    std::vector<int> dist(n, -1);
    std::queue<Vertex> q;
    for (Vertex v : node.bag) {
      dist[v] = 0;
      q.push(v);
    }
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      if (dist[v] == max_route_length) continue;
      for (const auto& inc : graph.neighbors(v)) {
        if (dist[inc.neighbor] != -1) continue;
        dist[inc.neighbor] = dist[v] + 1;
        q.push(inc.neighbor);
      }
    }
    for (Vertex v = 0; v < n; ++v)
      if (dist[v] != -1) view.vis[t].push_back(v);
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
      const Edge& edge = graph.edge(e);
      if (dist[edge.u] != -1 && dist[edge.v] != -1) view.e_vis[t].push_back(e);
    }
  }
  return view;
}

}  // namespace ufp
