#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ufp/core.hpp"
#include "ufp/oracle.hpp"
#include "ufp/treedecomp.hpp"

// Dynamic program over visible edges (both endpoints within distance ell of the bag).
// A record stores the capacity already consumed on each visible edge and the profit of
// the tasks routed so far. A task is routed as a whole, in the rank step, once both of
// its endpoints are forgotten.
namespace ufp::fpt {

/// One routed task, or a join of two histories.
struct Trace {
  TaskId task = -1;
  Path path;
  std::shared_ptr<const Trace> left;
  std::shared_ptr<const Trace> right;
};

struct Record {
  std::vector<int> lambda;  // aligned with the table domain
  Profit omega = 0;
  std::shared_ptr<const Trace> trace;
};

struct Table {
  std::vector<EdgeId> domain;  // sorted
  std::vector<Record> records;  // sorted by lambda, one per lambda
};

struct Context {
  Context(const Instance& instance, const NiceTreeDecomposition& decomposition, const BoundaryView& view);

  const Instance& instance;
  const NiceTreeDecomposition& decomposition;
  const BoundaryView& view;
  std::size_t max_paths = 1'000'000;
  std::size_t max_candidates = 50'000'000;
};

/// Tasks whose endpoints both become past at this forget or join node, by index.
std::vector<TaskId> newly_active_tasks(int node, const NiceTreeDecomposition& decomposition,
                                       const BoundaryView& view, const Instance& instance);

/// Routes task z on every bounded-length path inside the domain (or skips it) and
/// keeps the best profit per lambda.
Table rank_step(const Table& table, TaskId z, const Instance& instance, std::size_t max_paths = 1'000'000);

Table leaf_table(int node, const Context& ctx);
Table step_introduce(const Table& child, int node, const Context& ctx);
Table step_forget(const Table& child, int node, const Context& ctx);
Table step_join(const Table& left, const Table& right, int node, const Context& ctx);

/// Invariant violations of a finished table (empty when clean).
std::vector<std::string> check_table(const Table& table, int node, const Context& ctx);

}  // namespace ufp::fpt

namespace ufp {

struct FptOptions {
  std::size_t max_table_size = 2'000'000;
  std::size_t max_paths = 1'000'000;
  bool check_invariants = false;
};

/// Exact optimum via the visible-edge dynamic program.
OptimalResult solve_fpt(const Instance& instance, const NiceTreeDecomposition& decomposition,
                        const FptOptions& options = {});

}  // namespace ufp
