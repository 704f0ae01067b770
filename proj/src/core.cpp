#include "ufp/core.hpp"

#include <algorithm>
#include <set>

namespace ufp {

CapacitatedGraph::CapacitatedGraph(int vertex_count) {
  if (vertex_count < 0) throw InputError("negative vertex count");
  adjacency_.resize(vertex_count);
}

EdgeId CapacitatedGraph::add_edge(Vertex a, Vertex b, int capacity) {
  if (!contains(a) || !contains(b))
    throw InputError("edge endpoint out of range: " + std::to_string(a) + "-" + std::to_string(b));
  if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
  if (capacity < 0) throw InputError("negative capacity");
  if (find_edge(a, b)) throw InputError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  EdgeId id = edge_count();
  edges_.push_back(Edge{std::min(a, b), std::max(a, b), capacity});
  auto insert_sorted = [](std::vector<Incidence>& list, Incidence inc) {
    auto pos = std::lower_bound(list.begin(), list.end(), inc,
                                [](const Incidence& x, const Incidence& y) { return x.neighbor < y.neighbor; });
    list.insert(pos, inc);
  };
  insert_sorted(adjacency_[a], Incidence{b, id});
  insert_sorted(adjacency_[b], Incidence{a, id});
  return id;
}

std::optional<EdgeId> CapacitatedGraph::find_edge(Vertex a, Vertex b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  const auto& list = adjacency_[a];
  auto pos = std::lower_bound(list.begin(), list.end(), b,
                              [](const Incidence& x, Vertex w) { return x.neighbor < w; });
  if (pos != list.end() && pos->neighbor == b) return pos->edge;
  return std::nullopt;
}

int CapacitatedGraph::max_degree() const {
  int best = 0;
  for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

int CapacitatedGraph::max_capacity() const {
  int best = 0;
  for (const auto& e : edges_) best = std::max(best, e.capacity);
  return best;
}

Instance::Instance(CapacitatedGraph graph, std::vector<Task> tasks, Profit target,
                   std::optional<int> max_route_length, std::string provenance)
    : graph_(std::move(graph)),
      tasks_(std::move(tasks)),
      target_(target),
      max_route_length_(max_route_length.value_or(graph_.vertex_count())),
      provenance_(std::move(provenance)) {
  if (target_ < 0) throw InputError("negative profit target");
  if (max_route_length && *max_route_length < 1) throw InputError("max_route_length must be positive");
  // An instance without vertices has no routes at all; keep ell positive.
  if (max_route_length_ < 1) max_route_length_ = 1;
  for (std::size_t i = 0; i < tasks_.size(); ++i) {
    const Task& t = tasks_[i];
    std::string where = "task " + std::to_string(i);
    if (!graph_.contains(t.source) || !graph_.contains(t.target))
      throw InputError(where + ": endpoint out of range");
    if (t.source == t.target) throw InputError(where + ": source equals target");
    if (t.demand < 0) throw InputError(where + ": negative demand");
    if (t.profit < 0) throw InputError(where + ": negative profit");
  }
}

Instance Instance::with_max_route_length(int ell) const {
  return Instance(graph_, tasks_, target_, ell, provenance_);
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::EndpointMismatch: return "endpoint_mismatch";
    case ViolationKind::NonEdgeStep: return "non_edge_step";
    case ViolationKind::RepeatedVertex: return "repeated_vertex";
    case ViolationKind::OverLength: return "over_length";
    case ViolationKind::Overload: return "overload";
  }
  return "unknown";
}

namespace {

void check_ids(const Instance& instance, const Routing& routing) {
  for (const auto& [task, path] : routing.routes) {
    if (task < 0 || task >= instance.task_count())
      throw InputError("routing refers to unknown task " + std::to_string(task));
    for (Vertex v : path)
      if (!instance.graph().contains(v))
        throw InputError("task " + std::to_string(task) + ": vertex " + std::to_string(v) + " out of range");
  }
}

}  // namespace

VerificationReport verify_routing(const Instance& instance, const Routing& routing) {
  check_ids(instance, routing);
  const auto& g = instance.graph();
  VerificationReport report;
  std::vector<std::int64_t> load(g.edge_count(), 0);

  for (const auto& [task_id, path] : routing.routes) {
    const Task& task = instance.task(task_id);
    report.profit += task.profit;
    auto flag = [&](ViolationKind kind, std::string detail) {
      report.violations.push_back(Violation{kind, task_id, -1, std::move(detail)});
    };
    if (path.empty() || path.front() != task.source || path.back() != task.target)
      flag(ViolationKind::EndpointMismatch, "path does not connect the task endpoints");
    if (std::set<Vertex>(path.begin(), path.end()).size() != path.size())
      flag(ViolationKind::RepeatedVertex, "path is not simple");
    if (!path.empty() && static_cast<int>(path.size()) - 1 > instance.max_route_length())
      flag(ViolationKind::OverLength, "path has " + std::to_string(path.size() - 1) + " edges, bound is " +
                                          std::to_string(instance.max_route_length()));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto e = g.find_edge(path[i], path[i + 1]);
      if (!e) {
        flag(ViolationKind::NonEdgeStep, std::to_string(path[i]) + "-" + std::to_string(path[i + 1]) + " is not an edge");
        continue;
      }
      load[*e] += task.demand;
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (load[e] > g.edge(e).capacity) {
      const Edge& edge = g.edge(e);
      report.violations.push_back(Violation{ViolationKind::Overload, -1, e,
                                            "edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v) +
                                                " carries " + std::to_string(load[e]) + " > " +
                                                std::to_string(edge.capacity)});
    }
  }
  report.valid = report.violations.empty();
  return report;
}

std::vector<std::int64_t> edge_loads(const Instance& instance, const Routing& routing) {
  check_ids(instance, routing);
  const auto& g = instance.graph();
  std::vector<std::int64_t> load(g.edge_count(), 0);
  for (const auto& [task_id, path] : routing.routes) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto e = g.find_edge(path[i], path[i + 1]);
      if (!e) throw InputError("task " + std::to_string(task_id) + " steps along a non-edge");
      load[*e] += instance.task(task_id).demand;
    }
  }
  return load;
}

}  // namespace ufp
