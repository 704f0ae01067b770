#include "ufp/solver_xp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>

namespace ufp::xp {

namespace {

Vertex bag_endpoint(const CapacitatedGraph& graph, EdgeId e, std::span<const Vertex> bag) {
  const Edge& edge = graph.edge(e);
  if (std::binary_search(bag.begin(), bag.end(), edge.u)) return edge.u;
  if (std::binary_search(bag.begin(), bag.end(), edge.v)) return edge.v;
  return -1;
}

bool contains(const TaskSet& set, TaskId z) { return std::binary_search(set.begin(), set.end(), z); }

int index_of(std::span<const EdgeId> list, EdgeId e) {
  auto it = std::lower_bound(list.begin(), list.end(), e);
  if (it == list.end() || *it != e) return -1;
  return static_cast<int>(it - list.begin());
}

std::vector<std::pair<TaskId, int>> theta_from(const std::vector<TaskSet>& lambda,
                                               const std::function<int(TaskId)>& value) {
  std::set<TaskId> tasks;
  for (const auto& s : lambda) tasks.insert(s.begin(), s.end());
  std::vector<std::pair<TaskId, int>> theta;
  theta.reserve(tasks.size());
  for (TaskId z : tasks) theta.emplace_back(z, value(z));
  return theta;
}

int theta_sum(const Record& r) {
  int s = 0;
  for (const auto& [z, v] : r.theta) s += v;
  return s;
}

int incidence_count(const Record& r) {
  int s = 0;
  for (const auto& set : r.lambda) s += static_cast<int>(set.size());
  return s;
}

}  // namespace

int Record::theta_of(TaskId z) const {
  auto it = std::lower_bound(theta.begin(), theta.end(), std::make_pair(z, std::numeric_limits<int>::min()));
  if (it == theta.end() || it->first != z) return 0;
  return it->second;
}

std::vector<TaskId> Record::active_tasks() const {
  std::vector<TaskId> out;
  for (const auto& [z, v] : theta) out.push_back(z);
  return out;
}

Context::Context(const Instance& inst, const NiceTreeDecomposition& td, const BoundaryView& bv)
    : instance(inst), decomposition(td), view(bv), in_dp(inst.task_count(), 0) {
  for (TaskId z = 0; z < inst.task_count(); ++z) in_dp[z] = inst.task(z).demand > 0 && inst.task(z).profit > 0;
}

std::vector<Vertex> jump_vertices(const CapacitatedGraph& graph, std::span<const EdgeId> present,
                                  std::span<const TaskSet> lambda, std::span<const Vertex> bag, TaskId z) {
  std::vector<Vertex> out;
  for (Vertex x : bag) {
    int count = 0;
    for (std::size_t i = 0; i < present.size(); ++i) {
      const Edge& e = graph.edge(present[i]);
      if ((e.u == x || e.v == x) && contains(lambda[i], z)) ++count;
    }
    if (count >= 2) out.push_back(x);
  }
  return out;
}

bool supersedes(const Record& candidate, const Record& other, const CapacitatedGraph& graph,
                std::span<const EdgeId> present, std::span<const Vertex> bag) {
  if (candidate.omega != other.omega) throw InputError("supersession is only defined between records of equal profit");
  if (candidate.lambda.size() != present.size() || other.lambda.size() != present.size())
    throw InputError("record does not match the present edges");

  // (task, bag vertex) pairs where `other` carries the task but `candidate` does not.
  std::set<std::pair<TaskId, Vertex>> stripped;
  std::map<std::pair<TaskId, Vertex>, int> count_other, count_candidate;
  for (std::size_t i = 0; i < present.size(); ++i) {
    Vertex x = bag_endpoint(graph, present[i], bag);
    const TaskSet& a = candidate.lambda[i];
    const TaskSet& b = other.lambda[i];
    if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return false;
    for (TaskId z : b) {
      ++count_other[{z, x}];
      if (!contains(a, z)) stripped.insert({z, x});
    }
    for (TaskId z : a) ++count_candidate[{z, x}];
  }
  std::set<TaskId> stripped_tasks;
  for (const auto& [z, x] : stripped) {
    if (x < 0 || count_other[{z, x}] < 2 || count_candidate[{z, x}] != 0) return false;
    stripped_tasks.insert(z);
  }
  bool strict = false;
  for (const auto& [z, before] : other.theta) {
    int after = candidate.theta_of(z);
    if (stripped_tasks.count(z)) {
      if (after >= before) return false;
    } else if (after > before) {
      return false;
    }
    strict = strict || after < before;
  }
  for (const auto& [z, after] : candidate.theta)
    if (other.theta_of(z) == 0 && after > 0) return false;
  return strict;
}

Table prune(std::vector<Record> candidates, const CapacitatedGraph& graph, std::span<const EdgeId> present,
            std::span<const Vertex> bag) {
  // Condition (i): one record per (lambda, theta), keeping the largest profit.
  using Key = std::pair<std::vector<TaskSet>, std::vector<std::pair<TaskId, int>>>;
  std::map<Key, std::size_t> slot;
  std::vector<Record> unique;
  for (auto& rec : candidates) {
    Key key{rec.lambda, rec.theta};
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(std::move(key), unique.size());
      unique.push_back(std::move(rec));
    } else if (rec.omega > unique[it->second].omega) {
      unique[it->second] = std::move(rec);
    }
  }

  // Condition (ii): drop records superseded by another record of equal profit.
  std::map<Profit, std::vector<std::size_t>> by_profit;
  for (std::size_t i = 0; i < unique.size(); ++i) by_profit[unique[i].omega].push_back(i);
  std::vector<char> dropped(unique.size(), 0);
  std::vector<int> sums(unique.size()), incidences(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i) {
    sums[i] = theta_sum(unique[i]);
    incidences[i] = incidence_count(unique[i]);
  }
  for (auto& [omega, group] : by_profit) {
    if (group.size() < 2) continue;
    std::sort(group.begin(), group.end(), [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });
    for (std::size_t bi = 0; bi < group.size(); ++bi) {
      std::size_t b = group[bi];
      for (std::size_t ai = 0; ai < bi; ++ai) {
        std::size_t a = group[ai];
        if (sums[a] >= sums[b]) break;
        if (incidences[a] > incidences[b]) continue;
        if (supersedes(unique[a], unique[b], graph, present, bag)) {
          dropped[b] = 1;
          break;
        }
      }
    }
  }
  Table out;
  out.reserve(unique.size());
  for (std::size_t i = 0; i < unique.size(); ++i)
    if (!dropped[i]) out.push_back(std::move(unique[i]));
  std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.omega < b.omega;
  });
  return out;
}

Table leaf_table() { return Table{Record{}}; }

Table step_introduce(const Table& child) { return child; }

Table step_forget(const Table& child, int node, const Context& ctx) {
  const auto& td = ctx.decomposition;
  const auto& view = ctx.view;
  const auto& graph = ctx.instance.graph();
  const NiceNode& nn = td.nodes.at(node);
  if (nn.kind != NodeKind::Forget) throw InputError("step_forget called on a non-forget node");
  const int child_node = nn.children.at(0);
  const Vertex u = nn.vertex;
  const int ell = ctx.instance.max_route_length();
  const auto& present_c = view.present[child_node];
  const auto& present_t = view.present[node];

  std::vector<int> u_edges;  // child positions of edges u - past(t')
  for (std::size_t i = 0; i < present_c.size(); ++i) {
    const Edge& e = graph.edge(present_c[i]);
    if (e.u == u || e.v == u) u_edges.push_back(static_cast<int>(i));
  }
  // For every position of present(t): child position (>= 0) or -(1 + new edge index).
  std::vector<int> source;
  std::vector<EdgeId> new_edges;
  for (EdgeId e : present_t) {
    int ci = index_of(present_c, e);
    if (ci >= 0) {
      source.push_back(ci);
    } else {
      source.push_back(-1 - static_cast<int>(new_edges.size()));
      new_edges.push_back(e);
    }
  }
  const int new_count = static_cast<int>(new_edges.size());

  std::vector<Record> candidates;
  for (const Record& rec : child) {
    std::map<TaskId, int> old_degree;
    for (int i : u_edges)
      for (TaskId z : rec.lambda[i]) ++old_degree[z];

    // Allowed numbers of new edges per task with a nonzero option.
    struct Choice {
      TaskId task;
      bool zero_ok;
      int positive;  // 0 when none
    };
    std::vector<Choice> choices;
    bool dead = false;
    for (TaskId z = 0; z < ctx.instance.task_count() && !dead; ++z) {
      if (!ctx.in_dp[z]) continue;
      const Task& task = ctx.instance.task(z);
      auto od_it = old_degree.find(z);
      const int od = od_it == old_degree.end() ? 0 : od_it->second;
      const bool endpoint = task.has_endpoint(u);
      const bool active = rec.theta_of(z) > 0;
      const bool past_endpoint = view.is_past(child_node, task.source) || view.is_past(child_node, task.target);
      const bool may_appear = active || !past_endpoint;
      if (endpoint) {
        if (od >= 2) dead = true;
        else if (od == 0 && may_appear && new_count >= 1) choices.push_back({z, true, 1});
      } else {
        if (od >= 3) dead = true;
        else if (od == 1) choices.push_back({z, false, 1});
        else if (od == 0 && may_appear && new_count >= 2) choices.push_back({z, true, 2});
      }
    }
    if (dead) continue;

    std::vector<int> residual(new_count);
    for (int j = 0; j < new_count; ++j) residual[j] = graph.edge(new_edges[j]).capacity;
    std::vector<TaskSet> new_sets(new_count);
    std::map<TaskId, int> new_degree;

    auto emit = [&]() {
      Record out;
      out.lambda.reserve(present_t.size());
      for (int s : source) out.lambda.push_back(s >= 0 ? rec.lambda[s] : new_sets[-1 - s]);
      out.omega = rec.omega;
      for (const auto& [z, od] : old_degree) {
        const Task& task = ctx.instance.task(z);
        auto nd = new_degree.find(z);
        if (task.has_endpoint(u) && od + (nd == new_degree.end() ? 0 : nd->second) == 1) out.omega += task.profit;
      }
      for (const auto& [z, nd] : new_degree) {
        const Task& task = ctx.instance.task(z);
        if (task.has_endpoint(u) && !old_degree.count(z) && nd == 1) out.omega += task.profit;
      }
      bool too_long = false;
      out.theta = theta_from(out.lambda, [&](TaskId z) {
        auto nd = new_degree.find(z);
        int value = rec.theta_of(z) + (nd == new_degree.end() ? 0 : nd->second);
        if (value > ell) too_long = true;
        return value;
      });
      if (too_long) return;
      std::vector<std::pair<EdgeId, TaskSet>> assigned;
      for (int j = 0; j < new_count; ++j)
        if (!new_sets[j].empty()) assigned.emplace_back(new_edges[j], new_sets[j]);
      if (assigned.empty()) {
        out.trace = rec.trace;
      } else {
        out.trace = std::make_shared<const Trace>(Trace{std::move(assigned), rec.trace, nullptr});
      }
      candidates.push_back(std::move(out));
      if (candidates.size() > ctx.max_candidates)
        throw LimitExceeded("forget node " + std::to_string(node) + " produced too many candidate records");
    };

    auto place = [&](auto&& self, std::size_t idx) -> void {
      if (idx == choices.size()) {
        emit();
        return;
      }
      const Choice& c = choices[idx];
      const int demand = ctx.instance.task(c.task).demand;
      if (c.zero_ok) self(self, idx + 1);
      if (c.positive == 0) return;
      // All subsets of `c.positive` new edges with room for the demand.
      std::vector<int> pick;
      auto combine = [&](auto&& inner, int from) -> void {
        if (static_cast<int>(pick.size()) == c.positive) {
          for (int j : pick) {
            residual[j] -= demand;
            new_sets[j].push_back(c.task);
          }
          new_degree[c.task] = c.positive;
          self(self, idx + 1);
          new_degree.erase(c.task);
          for (int j : pick) {
            residual[j] += demand;
            new_sets[j].pop_back();
          }
          return;
        }
        for (int j = from; j < new_count; ++j) {
          if (residual[j] < demand) continue;
          pick.push_back(j);
          inner(inner, j + 1);
          pick.pop_back();
        }
      };
      combine(combine, 0);
    };
    place(place, 0);
  }
  return prune(std::move(candidates), graph, present_t, nn.bag);
}

Table step_join(const Table& left, const Table& right, int node, const Context& ctx) {
  const auto& view = ctx.view;
  const auto& graph = ctx.instance.graph();
  const NiceNode& nn = ctx.decomposition.nodes.at(node);
  if (nn.kind != NodeKind::Join) throw InputError("step_join called on a non-join node");
  const int ell = ctx.instance.max_route_length();
  const auto& present_t = view.present[node];
  const auto& present_1 = view.present[nn.children[0]];
  const auto& present_2 = view.present[nn.children[1]];

  struct Slot {
    int side;
    int index;
    Vertex bag_vertex;
  };
  std::vector<Slot> slots;
  for (EdgeId e : present_t) {
    int i1 = index_of(present_1, e);
    int i2 = index_of(present_2, e);
    if ((i1 >= 0) == (i2 >= 0)) throw InputError("join node present edges are not a disjoint union");
    slots.push_back(Slot{i1 >= 0 ? 1 : 2, i1 >= 0 ? i1 : i2, bag_endpoint(graph, e, nn.bag)});
  }

  std::vector<Record> candidates;
  for (const Record& a : left) {
    for (const Record& b : right) {
      Record out;
      out.lambda.reserve(slots.size());
      std::map<std::pair<TaskId, Vertex>, int> at_vertex;
      bool degenerate = false;
      for (const Slot& s : slots) {
        const TaskSet& set = s.side == 1 ? a.lambda[s.index] : b.lambda[s.index];
        for (TaskId z : set) {
          int count = ++at_vertex[{z, s.bag_vertex}];
          int limit = ctx.instance.task(z).has_endpoint(s.bag_vertex) ? 1 : 2;
          if (count > limit) degenerate = true;
        }
        out.lambda.push_back(set);
      }
      if (degenerate) continue;
      bool too_long = false;
      out.theta = theta_from(out.lambda, [&](TaskId z) {
        int value = a.theta_of(z) + b.theta_of(z);
        if (value > ell) too_long = true;
        return value;
      });
      if (too_long) continue;
      out.omega = a.omega + b.omega;
      out.trace = std::make_shared<const Trace>(Trace{{}, a.trace, b.trace});
      candidates.push_back(std::move(out));
      if (candidates.size() > ctx.max_candidates)
        throw LimitExceeded("join node " + std::to_string(node) + " produced too many candidate records");
    }
  }
  return prune(std::move(candidates), graph, present_t, nn.bag);
}

std::vector<std::string> check_table(const Table& table, int node, const Context& ctx) {
  std::vector<std::string> issues;
  const auto& graph = ctx.instance.graph();
  const auto& present = ctx.view.present[node];
  const auto& bag = ctx.decomposition.nodes[node].bag;
  const int c = graph.max_capacity();
  const int ell = ctx.instance.max_route_length();
  auto where = [&](std::size_t i) { return "xp node " + std::to_string(node) + " record " + std::to_string(i) + ": "; };

  std::set<std::pair<std::vector<TaskSet>, std::vector<std::pair<TaskId, int>>>> keys;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Record& r = table[i];
    if (r.lambda.size() != present.size()) {
      issues.push_back(where(i) + "lambda does not match present edges");
      continue;
    }
    for (std::size_t k = 0; k < present.size(); ++k) {
      long demand = 0;
      for (TaskId z : r.lambda[k]) demand += ctx.instance.task(z).demand;
      if (demand > std::min(c, graph.edge(present[k]).capacity)) issues.push_back(where(i) + "edge overloaded");
    }
    auto expect = theta_from(r.lambda, [&](TaskId z) { return r.theta_of(z); });
    if (expect != r.theta) issues.push_back(where(i) + "theta domain differs from the tasks in lambda");
    for (const auto& [z, v] : r.theta)
      if (v < 1 || v > ell) issues.push_back(where(i) + "theta out of range");
    if (!keys.insert({r.lambda, r.theta}).second) issues.push_back(where(i) + "duplicate (lambda, theta)");
  }
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = 0; j < table.size(); ++j)
      if (i != j && table[i].omega == table[j].omega && supersedes(table[i], table[j], graph, present, bag))
        issues.push_back(where(j) + "superseded by record " + std::to_string(i));

  int dp_tasks = 0;
  for (char f : ctx.in_dp) dp_tasks += f;
  double exponent = static_cast<double>(present.size()) * c;
  double log_bound = exponent * (std::log(dp_tasks + 1.0) + std::log(ell + 1.0));
  if (std::log(static_cast<double>(std::max<std::size_t>(table.size(), 1))) > log_bound + 1e-9)
    issues.push_back("xp node " + std::to_string(node) + ": table size exceeds the syntactic bound");
  return issues;
}

}  // namespace ufp::xp

namespace ufp {

namespace {

std::optional<Path> shortest_path(const CapacitatedGraph& graph, Vertex s, Vertex t, int max_length) {
  std::vector<int> prev(graph.vertex_count(), -2);
  std::queue<std::pair<Vertex, int>> q;
  prev[s] = -1;
  q.push({s, 0});
  while (!q.empty()) {
    auto [v, d] = q.front();
    q.pop();
    if (v == t) break;
    if (d == max_length) continue;
    for (const auto& inc : graph.neighbors(v)) {
      if (prev[inc.neighbor] != -2) continue;
      prev[inc.neighbor] = v;
      q.push({inc.neighbor, d + 1});
    }
  }
  if (prev[t] == -2) return std::nullopt;
  Path p;
  for (Vertex v = t; v != -1; v = prev[v]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

// The edges assigned to each task along the chosen history, turned into s-t paths.
// Components that are not attached to an endpoint are closed cycles and are dropped.
Routing routes_from_trace(const Instance& instance, const std::shared_ptr<const xp::Trace>& root) {
  const auto& graph = instance.graph();
  std::map<TaskId, std::vector<EdgeId>> edges;
  std::vector<const xp::Trace*> stack;
  if (root) stack.push_back(root.get());
  while (!stack.empty()) {
    const xp::Trace* t = stack.back();
    stack.pop_back();
    for (const auto& [e, tasks] : t->assigned)
      for (TaskId z : tasks) edges[z].push_back(e);
    if (t->left) stack.push_back(t->left.get());
    if (t->right) stack.push_back(t->right.get());
  }
  Routing routing;
  for (auto& [z, list] : edges) {
    const Task& task = instance.task(z);
    std::map<Vertex, std::vector<EdgeId>> incident;
    for (EdgeId e : list) {
      incident[graph.edge(e).u].push_back(e);
      incident[graph.edge(e).v].push_back(e);
    }
    if (incident[task.source].size() != 1) continue;
    Path path{task.source};
    EdgeId came = -1;
    Vertex cur = task.source;
    while (cur != task.target && path.size() <= list.size() + 1) {
      EdgeId next = -1;
      for (EdgeId e : incident[cur])
        if (e != came) next = e;
      if (next == -1) break;
      cur = graph.edge(next).other(cur);
      came = next;
      path.push_back(cur);
    }
    if (cur == task.target) routing.routes[z] = std::move(path);
  }
  return routing;
}

}  // namespace

OptimalResult solve_xp(const Instance& instance, const NiceTreeDecomposition& decomposition, const XpOptions& options) {
  const auto& graph = instance.graph();
  ValidationResult check = validate(graph, decomposition);
  if (!check.valid) throw InputError("invalid nice tree decomposition: " + check.violations.front());

  BoundaryView view = boundary_view(graph, decomposition, instance.max_route_length());
  xp::Context ctx(instance, decomposition, view);
  OptimalResult result;
  auto note = [&](std::vector<std::string> issues) {
    result.stats.invariant_violations += issues.size();
    for (auto& s : issues)
      if (result.stats.violation_messages.size() < 20) result.stats.violation_messages.push_back(std::move(s));
  };

  std::vector<std::optional<xp::Table>> tables(decomposition.node_count());
  for (int t = 0; t < decomposition.node_count(); ++t) {
    const NiceNode& node = decomposition.nodes[t];
    xp::Table table;
    switch (node.kind) {
      case NodeKind::Leaf: table = xp::leaf_table(); break;
      case NodeKind::Introduce: table = xp::step_introduce(*tables[node.children[0]]); break;
      case NodeKind::Forget: table = xp::step_forget(*tables[node.children[0]], t, ctx); break;
      case NodeKind::Join: table = xp::step_join(*tables[node.children[0]], *tables[node.children[1]], t, ctx); break;
    }
    for (int c : node.children) tables[c].reset();
    result.stats.max_table_size = std::max(result.stats.max_table_size, table.size());
    if (table.size() > options.max_table_size)
      throw LimitExceeded("xp table at node " + std::to_string(t) + " has " + std::to_string(table.size()) + " records");
    if (options.check_invariants) note(xp::check_table(table, t, ctx));
    tables[t] = std::move(table);
  }
  result.stats.nodes = decomposition.node_count();

  const xp::Table& root = *tables[decomposition.root()];
  if (root.size() != 1 || !root.front().lambda.empty()) note({"xp root table is not a single empty record"});
  const xp::Record& best = root.front();
  if (best.omega % 2 != 0) note({"xp root profit is not integral"});
  result.optimum = best.omega / 2;
  result.witness = routes_from_trace(instance, best.trace);

  Profit routed = 0;
  for (const auto& [z, path] : result.witness.routes) routed += instance.task(z).profit;
  if (routed != result.optimum) note({"xp witness profit differs from the table optimum"});

  for (TaskId z = 0; z < instance.task_count(); ++z) {
    const Task& task = instance.task(z);
    if (task.demand != 0 || task.profit == 0) continue;
    if (auto p = shortest_path(graph, task.source, task.target, instance.max_route_length())) {
      result.witness.routes[z] = *p;
      result.optimum += task.profit;
    }
  }
  result.decision = result.optimum >= instance.target();
  return result;
}

}  // namespace ufp
