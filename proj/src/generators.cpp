#include "ufp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace ufp {

namespace {

// Unbiased draw in [lo, hi]; std::uniform_int_distribution differs between library vendors.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<std::int64_t>(x % span);
}

std::vector<std::int64_t> read_integers(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw InputError(std::string(what) + ": not an integer: " + token);
    out.push_back(value);
  }
  return out;
}

void validate_binpacking(const BinPackingInput& input) {
  if (input.bins < 1) throw InputError("bin packing needs at least one bin");
  if (input.bin_capacity < 0) throw InputError("bin capacity must be nonnegative");
  std::int64_t total = 0;
  for (int h : input.items) {
    if (h < 1) throw InputError("item sizes must be positive");
    total += h;
  }
  if (total != static_cast<std::int64_t>(input.bins) * input.bin_capacity)
    throw InputError("item sizes must sum to bins * capacity");
}

void validate_mcc(const MccInput& input) {
  if (input.vertex_count < 0) throw InputError("negative vertex count");
  if (static_cast<int>(input.color.size()) != input.vertex_count) throw InputError("one color per vertex required");
  for (int c : input.color)
    if (c < 0) throw InputError("color ids must be nonnegative");
  std::vector<int> size(input.class_count(), 0);
  for (int c : input.color) ++size[c];
  for (std::size_t c = 0; c < size.size(); ++c)
    if (size[c] == 0) throw InputError("color class " + std::to_string(c) + " is empty");
  for (auto [a, b] : input.edges)
    if (a < 0 || b < 0 || a >= input.vertex_count || b >= input.vertex_count || a == b)
      throw InputError("bad edge " + std::to_string(a) + "-" + std::to_string(b));
}

}  // namespace

int MccInput::class_count() const {
  int k = 0;
  for (int c : color) k = std::max(k, c + 1);
  return k;
}

std::int64_t control_sum(int k) {
  std::int64_t sum = 0;
  for (int i = 1; i <= k; ++i) sum += std::max(0, k - 2 * i + 1);
  return sum;
}

std::vector<int> control_capacities(int k) {
  std::vector<int> out;
  int acc = 0;
  for (int i = 1; i < k; ++i) {
    acc += std::max(0, k - 2 * i + 1);
    out.push_back(acc);
  }
  return out;
}

Instance reduce_mcc(const MccInput& original, bool drop_zero_demand) {
  validate_mcc(original);
  MccInput input = original;
  if (input.class_count() % 2 == 1) {
    const Vertex hub = input.vertex_count++;
    const int hub_color = input.class_count();
    for (Vertex v = 0; v < hub; ++v) input.edges.emplace_back(v, hub);
    input.color.push_back(hub_color);
  }
  const int k = input.class_count();
  const int n = input.vertex_count;
  const int p = k / 2;

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return input.color[a] < input.color[b]; });
  std::vector<int> position(n);
  for (int j = 0; j < n; ++j) position[order[j]] = j;

  auto s_vertex = [&](int i) { return i - 1; };  // 1-based color index
  auto t_vertex = [&](int i) { return k + 2 * n + i - 1; };
  auto vs = [&](int j) { return k + 2 * j; };  // 0-based position
  auto vt = [&](int j) { return k + 2 * j + 1; };

  const int path_vertices = 2 * n + 2 * k;
  CapacitatedGraph graph(path_vertices);
  const auto control = control_capacities(k);
  Profit total = 0;
  for (Vertex x = 0; x + 1 < path_vertices; ++x) {
    int capacity = p * p;
    if (x + 1 < k) capacity = control[x];                                    // s_{x+1} s_{x+2}
    if (x >= t_vertex(1)) capacity = control[k - 1 - (x - t_vertex(1) + 1)];  // t_{k-i} t_{k-i+1}
    graph.add_edge(x, x + 1, capacity);
    total += capacity;
  }

  std::vector<Task> tasks;
  auto add = [&](Vertex a, Vertex b, int demand) {
    if (demand == 0 && drop_zero_demand) return;
    tasks.push_back(Task{a, b, demand, static_cast<Profit>(demand) * std::abs(b - a)});
  };
  for (int j = 0; j < n; ++j) {
    const int i = input.color[order[j]] + 1;
    add(s_vertex(i), vs(j), std::max(0, k - 2 * i + 1));
    add(vs(j), vt(j), std::max(k - i, i - 1));
    add(vt(j), t_vertex(i), std::max(0, 2 * i - k - 1));
  }
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : input.edges) {
    if (input.color[a] == input.color[b]) continue;
    int x = std::min(position[a], position[b]);
    int y = std::max(position[a], position[b]);
    if (!seen.insert({x, y}).second) continue;
    add(vt(x), vs(y), 1);
  }

  std::string provenance = "mcc k=" + std::to_string(original.class_count()) + " n=" + std::to_string(original.vertex_count) +
                           " edges=" + std::to_string(original.edges.size());
  return Instance(std::move(graph), std::move(tasks), total, path_vertices, provenance);
}

Instance reduce_binpacking(const BinPackingInput& input) {
  validate_binpacking(input);
  CapacitatedGraph graph(input.bins + 2);
  for (int b = 0; b < input.bins; ++b) {
    graph.add_edge(0, b + 2, input.bin_capacity);
    graph.add_edge(1, b + 2, input.bin_capacity);
  }
  std::vector<Task> tasks;
  for (int h : input.items) tasks.push_back(Task{0, 1, h, 1});
  std::string provenance = "binpacking k=" + std::to_string(input.bins) + " m=" + std::to_string(input.bin_capacity);
  const Profit target = static_cast<Profit>(input.items.size());
  return Instance(std::move(graph), std::move(tasks), target, 2, provenance);
}

Instance gen_random(const RandomParams& p) {
  if (p.vertices < 1) throw InputError("random instance needs at least one vertex");
  if (p.max_degree < 1) throw InputError("max degree must be positive");
  if (p.max_capacity < 1) throw InputError("max capacity must be positive");
  if (p.tasks < 0) throw InputError("task count must be nonnegative");
  if (p.tasks > 0 && p.vertices < 2) throw InputError("tasks need two distinct vertices");
  if (p.demand_min < 0 || p.demand_min > p.demand_max) throw InputError("bad demand range");
  if (p.profit_min < 0 || p.profit_min > p.profit_max) throw InputError("bad profit range");

  std::mt19937_64 rng(p.seed);
  CapacitatedGraph graph(p.vertices);
  auto capacity = [&] { return static_cast<int>(draw(rng, 1, p.max_capacity)); };
  for (Vertex v = 1; v < p.vertices; ++v) {
    std::vector<Vertex> open;
    for (Vertex u = 0; u < v; ++u)
      if (graph.degree(u) < p.max_degree) open.push_back(u);
    if (open.empty()) continue;
    Vertex u = open[draw(rng, 0, static_cast<std::int64_t>(open.size()) - 1)];
    graph.add_edge(u, v, capacity());
  }
  for (Vertex a = 0; a < p.vertices; ++a)
    for (Vertex b = a + 1; b < p.vertices; ++b) {
      if (graph.find_edge(a, b) || graph.degree(a) >= p.max_degree || graph.degree(b) >= p.max_degree) continue;
      if (draw(rng, 0, 1) == 0) graph.add_edge(a, b, capacity());
    }
  std::vector<Task> tasks;
  for (int i = 0; i < p.tasks; ++i) {
    Vertex s = static_cast<Vertex>(draw(rng, 0, p.vertices - 1));
    Vertex t = static_cast<Vertex>(draw(rng, 0, p.vertices - 2));
    if (t >= s) ++t;
    int demand = static_cast<int>(draw(rng, p.demand_min, p.demand_max));
    Profit profit = draw(rng, p.profit_min, p.profit_max);
    tasks.push_back(Task{s, t, demand, profit});
  }
  std::ostringstream prov;
  prov << "random mt19937_64 seed=" << p.seed << " n=" << p.vertices << " max_degree=" << p.max_degree
       << " max_capacity=" << p.max_capacity << " tasks=" << p.tasks << " demand=" << p.demand_min << ".."
       << p.demand_max << " profit=" << p.profit_min << ".." << p.profit_max;
  return Instance(std::move(graph), std::move(tasks), p.target, p.max_route_length, prov.str());
}

bool check_mcc_bruteforce(const MccInput& input, double budget) {
  validate_mcc(input);
  const int k = input.class_count();
  std::vector<std::vector<Vertex>> classes(k);
  for (Vertex v = 0; v < input.vertex_count; ++v) classes[input.color[v]].push_back(v);
  double space = 1;
  for (const auto& c : classes) space *= static_cast<double>(c.size());
  if (space > budget) throw LimitExceeded("multicolored clique search exceeds budget");
  std::set<std::pair<Vertex, Vertex>> adjacent;
  for (auto [a, b] : input.edges) {
    adjacent.insert({a, b});
    adjacent.insert({b, a});
  }
  std::vector<Vertex> chosen;
  auto search = [&](auto&& self, int i) -> bool {
    if (i == k) return true;
    for (Vertex v : classes[i]) {
      bool ok = std::all_of(chosen.begin(), chosen.end(), [&](Vertex u) { return adjacent.count({u, v}) > 0; });
      if (!ok) continue;
      chosen.push_back(v);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(search, 0);
}

bool check_binpacking_bruteforce(const BinPackingInput& input, double budget) {
  validate_binpacking(input);
  if (std::pow(static_cast<double>(input.bins), static_cast<double>(input.items.size())) > budget)
    throw LimitExceeded("bin packing search exceeds budget");
  std::vector<int> load(input.bins, 0);
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == input.items.size())
      return std::all_of(load.begin(), load.end(), [&](int l) { return l == input.bin_capacity; });
    for (int b = 0; b < input.bins; ++b) {
      if (load[b] + input.items[i] > input.bin_capacity) continue;
      load[b] += input.items[i];
      bool found = self(self, i + 1);
      load[b] -= input.items[i];
      if (found) return true;
    }
    return false;
  };
  return search(search, 0);
}

std::vector<int> parse_colors(const std::string& text) {
  std::vector<int> out;
  for (std::int64_t c : read_integers(text, "colors")) {
    if (c < 0 || c > std::numeric_limits<int>::max()) throw InputError("colors: class ids must be nonnegative");
    out.push_back(static_cast<int>(c));
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> parse_edge_list(const std::string& text) {
  std::vector<std::pair<Vertex, Vertex>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto values = read_integers(line, "graph");
    if (values.size() != 2) throw InputError("graph: expected 'u v' per line, got: " + line);
    out.emplace_back(static_cast<Vertex>(values[0]), static_cast<Vertex>(values[1]));
  }
  return out;
}

std::vector<int> parse_items(const std::string& text) {
  std::vector<int> out;
  for (std::int64_t h : read_integers(text, "items")) {
    if (h < 1 || h > std::numeric_limits<int>::max()) throw InputError("items: sizes must be positive");
    out.push_back(static_cast<int>(h));
  }
  return out;
}

}  // namespace ufp
