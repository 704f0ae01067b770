#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ufp/core.hpp"
#include "ufp/oracle.hpp"
#include "ufp/treedecomp.hpp"

// Dynamic program over a nice tree decomposition whose records describe, for every
// present edge (exactly one endpoint already forgotten), the set of tasks routed
// across it, the number of route edges each crossing task has used so far below the
// bag, and the profit collected so far. Profit is collected per endpoint as it is
// forgotten, so it is kept in half units (stored doubled).
namespace ufp::xp {

using TaskSet = std::vector<TaskId>;  // sorted

/// Edge assignments made at one forget node, or a join of two histories.
struct Trace {
  std::vector<std::pair<EdgeId, TaskSet>> assigned;
  std::shared_ptr<const Trace> left;
  std::shared_ptr<const Trace> right;
};

struct Record {
  std::vector<TaskSet> lambda;                  // aligned with present(t)
  std::vector<std::pair<TaskId, int>> theta;    // sorted by task; domain = union of lambda
  Profit omega = 0;                             // doubled units
  std::shared_ptr<const Trace> trace;

  int theta_of(TaskId z) const;                 // 0 when z is not active
  std::vector<TaskId> active_tasks() const;
};

using Table = std::vector<Record>;

/// Shared read-only state for the node procedures.
struct Context {
  Context(const Instance& instance, const NiceTreeDecomposition& decomposition, const BoundaryView& view);

  const Instance& instance;
  const NiceTreeDecomposition& decomposition;
  const BoundaryView& view;
  std::vector<char> in_dp;  // tasks handled by the tables
  std::size_t max_candidates = 50'000'000;
};

/// Bag vertices incident to at least two present edges whose task sets contain z.
std::vector<Vertex> jump_vertices(const CapacitatedGraph& graph, std::span<const EdgeId> present,
                                  std::span<const TaskSet> lambda, std::span<const Vertex> bag, TaskId z);

/// True if `other` turns into `candidate` by repeatedly removing a task from all present
/// edges at some of its jump-vertices while strictly lowering that task's edge count.
/// Throws InputError when the two profits differ.
bool supersedes(const Record& candidate, const Record& other, const CapacitatedGraph& graph,
                std::span<const EdgeId> present, std::span<const Vertex> bag);

/// Keeps the best profit per (lambda, theta), drops superseded records, sorts canonically.
Table prune(std::vector<Record> candidates, const CapacitatedGraph& graph, std::span<const EdgeId> present,
            std::span<const Vertex> bag);

Table leaf_table();
Table step_introduce(const Table& child);
Table step_forget(const Table& child, int node, const Context& ctx);
Table step_join(const Table& left, const Table& right, int node, const Context& ctx);

/// Invariant violations of a finished table (empty when clean).
std::vector<std::string> check_table(const Table& table, int node, const Context& ctx);

}  // namespace ufp::xp

namespace ufp {

struct XpOptions {
  std::size_t max_table_size = 2'000'000;
  bool check_invariants = false;
};

/// Exact optimum via the present-edge dynamic program. Tasks with zero profit are
/// ignored and zero-demand tasks are routed along shortest paths outside the tables.
OptimalResult solve_xp(const Instance& instance, const NiceTreeDecomposition& decomposition,
                       const XpOptions& options = {});

}  // namespace ufp
