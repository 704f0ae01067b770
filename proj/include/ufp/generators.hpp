#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ufp/core.hpp"

namespace ufp {

/// Multicolored Clique input. `color[v]` is the 0-based class of vertex v.
struct MccInput {
  int vertex_count = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<int> color;

  int class_count() const;
};

/// Path instance whose optimum reaches the target iff the input has a multicolored
/// clique. An odd number of classes is padded with a universal one-vertex class.
/// Throws InputError on an empty class or bad ids.
Instance reduce_mcc(const MccInput& input, bool drop_zero_demand = false);

/// Capacities of s_i s_{i+1} for i = 1..k-1 (the t-side mirrors them).
std::vector<int> control_capacities(int k);

/// sum_{i=1..k} max(0, k - 2i + 1).
std::int64_t control_sum(int k);

struct BinPackingInput {
  int bins = 0;
  int bin_capacity = 0;
  std::vector<int> items;
};

/// Two terminals joined through one vertex per bin. Requires sum(items) == bins * capacity.
Instance reduce_binpacking(const BinPackingInput& input);

struct RandomParams {
  int vertices = 8;
  int max_degree = 3;
  int max_capacity = 3;
  int tasks = 5;
  int demand_min = 1;
  int demand_max = 3;
  Profit profit_min = 1;
  Profit profit_max = 5;
  std::optional<int> max_route_length;
  Profit target = 1;
  std::uint64_t seed = 0;
};

/// Deterministic for fixed parameters; the seed is stored in the provenance string.
Instance gen_random(const RandomParams& params);

/// Exhaustive search over one vertex per class. LimitExceeded above `budget` choices.
bool check_mcc_bruteforce(const MccInput& input, double budget = 1e7);

/// Exhaustive item-to-bin assignment with every bin exactly full. LimitExceeded above `budget`.
bool check_binpacking_bruteforce(const BinPackingInput& input, double budget = 1e7);

/// One class id per non-empty line.
std::vector<int> parse_colors(const std::string& text);
/// One "u v" pair per non-empty line, 0-based; lines starting with '#' are skipped.
std::vector<std::pair<Vertex, Vertex>> parse_edge_list(const std::string& text);
/// Whitespace-separated positive integers.
std::vector<int> parse_items(const std::string& text);

}  // namespace ufp
