#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ufp {

using Vertex = int;
using EdgeId = int;
using TaskId = int;
using Profit = std::int64_t;
using Path = std::vector<Vertex>;

/// Malformed input: bad ids, broken invariants, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured search or memory budget would be exceeded.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  Vertex u = 0;  // u < v
  Vertex v = 0;
  int capacity = 0;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

struct Incidence {
  Vertex neighbor;
  EdgeId edge;
};

/// Simple undirected graph with nonnegative integer edge capacities.
class CapacitatedGraph {
 public:
  CapacitatedGraph() = default;
  explicit CapacitatedGraph(int vertex_count);

  /// Throws InputError on self-loops, duplicates, bad ids or negative capacity.
  EdgeId add_edge(Vertex a, Vertex b, int capacity);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }
  /// Sorted by neighbor id.
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
  bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }

  int max_degree() const;
  int max_capacity() const;

  bool operator==(const CapacitatedGraph& o) const { return edges_ == o.edges_ && vertex_count() == o.vertex_count(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

struct Task {
  Vertex source = 0;
  Vertex target = 0;
  int demand = 0;
  Profit profit = 0;

  bool has_endpoint(Vertex v) const { return source == v || target == v; }
  bool operator==(const Task&) const = default;
};

/// An Unsplittable Flow instance. Validated on construction.
class Instance {
 public:
  Instance() = default;
  /// `max_route_length` defaults to the vertex count.
  Instance(CapacitatedGraph graph, std::vector<Task> tasks, Profit target,
           std::optional<int> max_route_length = std::nullopt, std::string provenance = {});

  const CapacitatedGraph& graph() const { return graph_; }
  std::span<const Task> tasks() const { return tasks_; }
  const Task& task(TaskId i) const { return tasks_.at(i); }
  int task_count() const { return static_cast<int>(tasks_.size()); }
  Profit target() const { return target_; }
  int max_route_length() const { return max_route_length_; }
  const std::string& provenance() const { return provenance_; }

  int max_capacity() const { return graph_.max_capacity(); }
  int max_degree() const { return graph_.max_degree(); }

  Instance with_max_route_length(int ell) const;

  bool operator==(const Instance&) const = default;

 private:
  CapacitatedGraph graph_;
  std::vector<Task> tasks_;
  Profit target_ = 0;
  int max_route_length_ = 1;
  std::string provenance_;
};

/// Selected tasks mapped to their paths.
struct Routing {
  std::map<TaskId, Path> routes;
  bool operator==(const Routing&) const = default;
};

enum class ViolationKind { EndpointMismatch, NonEdgeStep, RepeatedVertex, OverLength, Overload };

struct Violation {
  ViolationKind kind;
  TaskId task = -1;  // -1 for Overload
  EdgeId edge = -1;  // Overload only
  std::string detail;
};

struct VerificationReport {
  bool valid = true;
  Profit profit = 0;
  std::vector<Violation> violations;
};

std::string to_string(ViolationKind kind);

/// Checks endpoints, simplicity, adjacency, length bound and capacities.
/// Throws InputError for task indices or vertex ids outside the instance.
VerificationReport verify_routing(const Instance& instance, const Routing& routing);

/// Per-edge demand sum (indexed by EdgeId). Throws InputError on bad ids or non-edge steps.
std::vector<std::int64_t> edge_loads(const Instance& instance, const Routing& routing);

}  // namespace ufp
