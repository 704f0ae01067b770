#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "ufp/core.hpp"
#include "ufp/generators.hpp"
#include "ufp/treedecomp.hpp"

namespace ufp::testing {

inline CapacitatedGraph make_graph(int n, const std::vector<std::tuple<int, int, int>>& edges) {
  CapacitatedGraph g(n);
  for (auto [a, b, c] : edges) g.add_edge(a, b, c);
  return g;
}

inline CapacitatedGraph path_graph(int n, int capacity = 1) {
  CapacitatedGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, capacity);
  return g;
}

inline CapacitatedGraph complete_graph(int n, int capacity = 1) {
  CapacitatedGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b, capacity);
  return g;
}

inline CapacitatedGraph cycle_graph(int n, int capacity = 1) {
  CapacitatedGraph g = path_graph(n, capacity);
  g.add_edge(0, n - 1, capacity);
  return g;
}

/// Random simple graph with edge probability p.
inline CapacitatedGraph random_graph(std::mt19937_64& rng, int n, double p, int max_capacity = 3) {
  std::bernoulli_distribution coin(p);
  CapacitatedGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b, 1 + static_cast<int>(rng() % max_capacity));
  return g;
}

/// The bounded family used throughout: n <= 8, degree <= 3, capacity <= 3, <= 5 tasks.
inline Instance small_random(std::uint64_t seed, std::optional<int> ell = std::nullopt) {
  RandomParams p;
  p.vertices = 2 + static_cast<int>(seed % 7);
  p.max_degree = 3;
  p.max_capacity = 3;
  p.tasks = static_cast<int>((seed / 7) % 6);
  p.demand_min = 0;
  p.demand_max = 3;
  p.profit_min = 0;
  p.profit_max = 6;
  p.max_route_length = ell;
  p.seed = seed;
  return gen_random(p);
}

inline NiceTreeDecomposition nice_of(const CapacitatedGraph& g) {
  auto mode = g.vertex_count() <= 16 ? DecompositionMode::ExactSmall : DecompositionMode::Heuristic;
  return to_nice(g, compute_decomposition(g, mode));
}

}  // namespace ufp::testing
