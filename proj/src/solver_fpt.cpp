#include "ufp/solver_fpt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace ufp::fpt {

namespace {

using Best = std::map<std::vector<int>, Record>;

void offer(Best& best, Record rec) {
  auto it = best.find(rec.lambda);
  if (it == best.end()) {
    auto key = rec.lambda;
    best.emplace(std::move(key), std::move(rec));
  } else if (rec.omega > it->second.omega) {
    it->second = std::move(rec);
  }
}

Table collect(std::vector<EdgeId> domain, Best best) {
  Table out{std::move(domain), {}};
  out.records.reserve(best.size());
  for (auto& [key, rec] : best) out.records.push_back(std::move(rec));
  return out;
}

Table run_rank_dp(Table table, const std::vector<TaskId>& tasks, const Context& ctx) {
  for (TaskId z : tasks) {
    if (ctx.instance.task(z).profit == 0) continue;  // routing it never helps
    table = rank_step(table, z, ctx.instance, ctx.max_paths);
    if (table.records.size() > ctx.max_candidates) throw LimitExceeded("fpt rank table grew past the candidate budget");
  }
  return table;
}

}  // namespace

Context::Context(const Instance& inst, const NiceTreeDecomposition& td, const BoundaryView& bv)
    : instance(inst), decomposition(td), view(bv) {}

std::vector<TaskId> newly_active_tasks(int node, const NiceTreeDecomposition& decomposition,
                                       const BoundaryView& view, const Instance& instance) {
  const NiceNode& nn = decomposition.nodes.at(node);
  std::vector<TaskId> out;
  for (TaskId z = 0; z < instance.task_count(); ++z) {
    const Task& task = instance.task(z);
    if (nn.kind == NodeKind::Forget) {
      const int child = nn.children[0];
      Vertex other = task.source == nn.vertex ? task.target : task.target == nn.vertex ? task.source : -1;
      if (other >= 0 && view.is_past(child, other)) out.push_back(z);
    } else if (nn.kind == NodeKind::Join) {
      const int a = nn.children[0], b = nn.children[1];
      if ((view.is_past(a, task.source) && view.is_past(b, task.target)) ||
          (view.is_past(b, task.source) && view.is_past(a, task.target)))
        out.push_back(z);
    }
  }
  return out;
}

Table rank_step(const Table& table, TaskId z, const Instance& instance, std::size_t max_paths) {
  const auto& graph = instance.graph();
  const Task& task = instance.task(z);
  // Subgraph on the domain edges; its edge ids are domain positions.
  CapacitatedGraph sub(graph.vertex_count());
  for (EdgeId e : table.domain) sub.add_edge(graph.edge(e).u, graph.edge(e).v, graph.edge(e).capacity);
  std::vector<Path> paths = enumerate_paths(sub, task.source, task.target, instance.max_route_length(), max_paths);
  std::vector<std::vector<int>> positions;
  for (const Path& p : paths) {
    std::vector<int> pos;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) pos.push_back(*sub.find_edge(p[k], p[k + 1]));
    positions.push_back(std::move(pos));
  }

  Best best;
  for (const Record& rec : table.records) offer(best, rec);
  for (const Record& rec : table.records) {
    for (std::size_t p = 0; p < paths.size(); ++p) {
      bool fits = true;
      for (int i : positions[p])
        if (rec.lambda[i] + task.demand > graph.edge(table.domain[i]).capacity) fits = false;
      if (!fits) continue;
      Record out{rec.lambda, rec.omega + task.profit, nullptr};
      for (int i : positions[p]) out.lambda[i] += task.demand;
      out.trace = std::make_shared<const Trace>(Trace{z, paths[p], rec.trace, nullptr});
      offer(best, std::move(out));
    }
  }
  return collect(table.domain, std::move(best));
}

Table leaf_table(int node, const Context& ctx) {
  const auto& domain = ctx.view.e_vis.at(node);
  return Table{domain, {Record{std::vector<int>(domain.size(), 0), 0, nullptr}}};
}

Table step_introduce(const Table& child, int node, const Context& ctx) {
  const auto& domain = ctx.view.e_vis.at(node);
  std::vector<int> from;  // child position per domain position, or -1
  for (EdgeId e : domain) {
    auto it = std::lower_bound(child.domain.begin(), child.domain.end(), e);
    from.push_back(it != child.domain.end() && *it == e ? static_cast<int>(it - child.domain.begin()) : -1);
  }
  Table out{domain, {}};
  out.records.reserve(child.records.size());
  for (const Record& rec : child.records) {
    Record r{std::vector<int>(domain.size(), 0), rec.omega, rec.trace};
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (from[i] >= 0) r.lambda[i] = rec.lambda[from[i]];
    out.records.push_back(std::move(r));
  }
  return out;  // zeros at fixed positions keep the lexicographic order
}

Table step_forget(const Table& child, int node, const Context& ctx) {
  Table ranked = run_rank_dp(child, newly_active_tasks(node, ctx.decomposition, ctx.view, ctx.instance), ctx);
  const auto& domain = ctx.view.e_vis.at(node);
  std::vector<int> keep;
  for (EdgeId e : domain) {
    auto it = std::lower_bound(ranked.domain.begin(), ranked.domain.end(), e);
    if (it == ranked.domain.end() || *it != e) throw InputError("visible edges grew at a forget node");
    keep.push_back(static_cast<int>(it - ranked.domain.begin()));
  }
  Best best;
  for (Record& rec : ranked.records) {
    std::vector<int> lambda;
    lambda.reserve(keep.size());
    for (int i : keep) lambda.push_back(rec.lambda[i]);
    offer(best, Record{std::move(lambda), rec.omega, std::move(rec.trace)});
  }
  return collect(domain, std::move(best));
}

Table step_join(const Table& left, const Table& right, int node, const Context& ctx) {
  const auto& graph = ctx.instance.graph();
  const auto& domain = ctx.view.e_vis.at(node);
  if (left.domain != domain || right.domain != domain) throw InputError("join children disagree on visible edges");
  Best best;
  std::size_t produced = 0;
  for (const Record& a : left.records) {
    for (const Record& b : right.records) {
      Record out{std::vector<int>(domain.size()), a.omega + b.omega, nullptr};
      bool fits = true;
      for (std::size_t i = 0; i < domain.size() && fits; ++i) {
        out.lambda[i] = a.lambda[i] + b.lambda[i];
        fits = out.lambda[i] <= graph.edge(domain[i]).capacity;
      }
      if (!fits) continue;
      if (a.trace || b.trace) {
        out.trace = !a.trace ? b.trace : !b.trace ? a.trace : std::make_shared<const Trace>(Trace{-1, {}, a.trace, b.trace});
      }
      offer(best, std::move(out));
      if (++produced > ctx.max_candidates)
        throw LimitExceeded("join node " + std::to_string(node) + " produced too many candidate records");
    }
  }
  return run_rank_dp(collect(domain, std::move(best)),
                     newly_active_tasks(node, ctx.decomposition, ctx.view, ctx.instance), ctx);
}

std::vector<std::string> check_table(const Table& table, int node, const Context& ctx) {
  std::vector<std::string> issues;
  const auto& graph = ctx.instance.graph();
  const int c = graph.max_capacity();
  const std::string where = "fpt node " + std::to_string(node) + ": ";
  if (table.domain != ctx.view.e_vis.at(node)) issues.push_back(where + "domain differs from the visible edges");
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    const Record& r = table.records[i];
    if (r.lambda.size() != table.domain.size()) {
      issues.push_back(where + "record size mismatch");
      continue;
    }
    for (std::size_t k = 0; k < r.lambda.size(); ++k)
      if (r.lambda[k] < 0 || r.lambda[k] > std::min(c, graph.edge(table.domain[k]).capacity))
        issues.push_back(where + "consumed capacity out of range");
    if (r.omega < 0) issues.push_back(where + "negative profit");
    if (i > 0 && !(table.records[i - 1].lambda < r.lambda)) issues.push_back(where + "lambda not unique or not sorted");
  }
  double log_bound = 0;
  for (EdgeId e : table.domain) log_bound += std::log(std::min(c, graph.edge(e).capacity) + 1.0);
  if (std::log(static_cast<double>(std::max<std::size_t>(table.records.size(), 1))) > log_bound + 1e-9)
    issues.push_back(where + "table size exceeds the capacity product");
  return issues;
}

}  // namespace ufp::fpt

namespace ufp {

OptimalResult solve_fpt(const Instance& instance, const NiceTreeDecomposition& decomposition, const FptOptions& options) {
  const auto& graph = instance.graph();
  ValidationResult check = validate(graph, decomposition);
  if (!check.valid) throw InputError("invalid nice tree decomposition: " + check.violations.front());

  BoundaryView view = boundary_view(graph, decomposition, instance.max_route_length());
  fpt::Context ctx(instance, decomposition, view);
  ctx.max_paths = options.max_paths;
  OptimalResult result;
  auto note = [&](std::vector<std::string> issues) {
    result.stats.invariant_violations += issues.size();
    for (auto& s : issues)
      if (result.stats.violation_messages.size() < 20) result.stats.violation_messages.push_back(std::move(s));
  };

  std::vector<std::optional<fpt::Table>> tables(decomposition.node_count());
  for (int t = 0; t < decomposition.node_count(); ++t) {
    const NiceNode& node = decomposition.nodes[t];
    fpt::Table table;
    switch (node.kind) {
      case NodeKind::Leaf: table = fpt::leaf_table(t, ctx); break;
      case NodeKind::Introduce: table = fpt::step_introduce(*tables[node.children[0]], t, ctx); break;
      case NodeKind::Forget: table = fpt::step_forget(*tables[node.children[0]], t, ctx); break;
      case NodeKind::Join: table = fpt::step_join(*tables[node.children[0]], *tables[node.children[1]], t, ctx); break;
    }
    for (int c : node.children) tables[c].reset();
    result.stats.max_table_size = std::max(result.stats.max_table_size, table.records.size());
    if (table.records.size() > options.max_table_size)
      throw LimitExceeded("fpt table at node " + std::to_string(t) + " has " + std::to_string(table.records.size()) +
                          " records");
    if (options.check_invariants) note(fpt::check_table(table, t, ctx));
    tables[t] = std::move(table);
  }
  result.stats.nodes = decomposition.node_count();

  const fpt::Table& root = *tables[decomposition.root()];
  if (root.records.size() != 1) note({"fpt root table does not hold a single record"});
  const fpt::Record& best = root.records.front();
  result.optimum = best.omega;

  std::vector<const fpt::Trace*> stack;
  if (best.trace) stack.push_back(best.trace.get());
  while (!stack.empty()) {
    const fpt::Trace* t = stack.back();
    stack.pop_back();
    if (t->task >= 0) result.witness.routes[t->task] = t->path;
    if (t->left) stack.push_back(t->left.get());
    if (t->right) stack.push_back(t->right.get());
  }
  Profit routed = 0;
  for (const auto& [z, path] : result.witness.routes) routed += instance.task(z).profit;
  if (routed != result.optimum) note({"fpt witness profit differs from the table optimum"});
  result.decision = result.optimum >= instance.target();
  return result;
}

}  // namespace ufp
