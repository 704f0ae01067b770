#include "ufp/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace ufp {

std::vector<Path> enumerate_paths(const CapacitatedGraph& graph, Vertex s, Vertex t, int max_length,
                                  std::size_t max_paths) {
  if (!graph.contains(s) || !graph.contains(t)) throw InputError("path endpoint out of range");
  if (s == t) throw InputError("path endpoints must differ");
  std::vector<Path> out;
  if (max_length < 1) return out;
  std::vector<char> on_path(graph.vertex_count(), 0);
  Path current{s};
  on_path[s] = 1;
  // Neighbors are sorted, so depth-first order is lexicographic order.
  auto dfs = [&](auto&& self, Vertex v) -> void {
    for (const auto& inc : graph.neighbors(v)) {
      Vertex w = inc.neighbor;
      if (on_path[w]) continue;
      if (w == t) {
        current.push_back(w);
        out.push_back(current);
        current.pop_back();
        if (out.size() > max_paths)
          throw LimitExceeded("more than " + std::to_string(max_paths) + " bounded-length paths");
        continue;
      }
      if (static_cast<int>(current.size()) >= max_length) continue;
      on_path[w] = 1;
      current.push_back(w);
      self(self, w);
      current.pop_back();
      on_path[w] = 0;
    }
  };
  dfs(dfs, s);
  return out;
}

namespace {

struct Search {
  const Instance& instance;
  std::vector<TaskId> order;
  std::vector<std::vector<std::vector<EdgeId>>> paths;  // per position in order
  std::vector<std::vector<Path>> vertex_paths;
  std::vector<Profit> suffix_profit;
  std::vector<std::int64_t> residual;
  std::vector<int> choice;  // -1 = skipped
  std::vector<int> best_choice;
  Profit best = -1;

  void run(std::size_t pos, Profit gained) {
    if (gained + suffix_profit[pos] <= best) return;
    if (pos == order.size()) {
      best = gained;
      best_choice = choice;
      return;
    }
    const Task& task = instance.task(order[pos]);
    for (std::size_t p = 0; p < paths[pos].size(); ++p) {
      const auto& edges = paths[pos][p];
      bool fits = std::all_of(edges.begin(), edges.end(), [&](EdgeId e) { return residual[e] >= task.demand; });
      if (!fits) continue;
      for (EdgeId e : edges) residual[e] -= task.demand;
      choice[pos] = static_cast<int>(p);
      run(pos + 1, gained + task.profit);
      for (EdgeId e : edges) residual[e] += task.demand;
    }
    choice[pos] = -1;
    run(pos + 1, gained);
  }
};

}  // namespace

OptimalResult solve_exhaustive(const Instance& instance, const ExhaustiveOptions& options) {
  const auto& g = instance.graph();
  Search search{instance, {}, {}, {}, {}, {}, {}, {}};
  double space = 1.0;
  for (TaskId i = 0; i < instance.task_count(); ++i) {
    const Task& task = instance.task(i);
    auto found = enumerate_paths(g, task.source, task.target, instance.max_route_length(),
                                 static_cast<std::size_t>(std::max(1.0, options.budget)));
    space *= 1.0 + static_cast<double>(found.size());
    if (space > options.budget)
      throw LimitExceeded("exhaustive search space exceeds budget " + std::to_string(options.budget));
    if (found.empty() || task.profit == 0) continue;  // never improves the optimum
    std::vector<std::vector<EdgeId>> as_edges;
    for (const Path& p : found) {
      std::vector<EdgeId> edges;
      for (std::size_t k = 0; k + 1 < p.size(); ++k) edges.push_back(*g.find_edge(p[k], p[k + 1]));
      as_edges.push_back(std::move(edges));
    }
    search.order.push_back(i);
    search.paths.push_back(std::move(as_edges));
    search.vertex_paths.push_back(std::move(found));
  }
  const std::size_t k = search.order.size();
  search.suffix_profit.assign(k + 1, 0);
  for (std::size_t p = k; p-- > 0;) search.suffix_profit[p] = search.suffix_profit[p + 1] + instance.task(search.order[p]).profit;
  search.residual.resize(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) search.residual[e] = g.edge(e).capacity;
  search.choice.assign(k, -1);
  search.best_choice.assign(k, -1);
  search.run(0, 0);

  OptimalResult result;
  result.optimum = std::max<Profit>(search.best, 0);
  for (std::size_t p = 0; p < k; ++p)
    if (search.best_choice[p] >= 0) result.witness.routes[search.order[p]] = search.vertex_paths[p][search.best_choice[p]];
  result.decision = result.optimum >= instance.target();
  return result;
}

}  // namespace ufp
