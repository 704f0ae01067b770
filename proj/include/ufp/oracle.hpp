#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ufp/core.hpp"

namespace ufp {

/// Counters reported by every solver (DP table sizes are zero for the oracle).
struct SolveStats {
  std::size_t nodes = 0;
  std::size_t max_table_size = 0;
  std::size_t invariant_violations = 0;
  std::vector<std::string> violation_messages;  // first few only
};

struct OptimalResult {
  Profit optimum = 0;
  Routing witness;
  bool decision = false;  // optimum >= target
  SolveStats stats;
};

/// All simple s-t paths with at most `max_length` edges, in lexicographic order of
/// their vertex sequences. Throws InputError if s == t or an id is out of range, and
/// LimitExceeded if more than `max_paths` paths exist.
std::vector<Path> enumerate_paths(const CapacitatedGraph& graph, Vertex s, Vertex t, int max_length,
                                  std::size_t max_paths = 10'000'000);

struct ExhaustiveOptions {
  double budget = 1e8;  // bound on prod over tasks of (1 + #paths)
};

/// Exact optimum by search over every subset and path assignment.
OptimalResult solve_exhaustive(const Instance& instance, const ExhaustiveOptions& options = {});

}  // namespace ufp
