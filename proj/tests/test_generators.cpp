#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "ufp/generators.hpp"
#include "ufp/io.hpp"
#include "ufp/oracle.hpp"
#include "ufp/solver_fpt.hpp"
#include "ufp/solver_xp.hpp"

#include <algorithm>

using namespace ufp;
using namespace ufp::testing;

namespace {

Profit capacity_sum(const CapacitatedGraph& g) {
  Profit s = 0;
  for (const Edge& e : g.edges()) s += e.capacity;
  return s;
}

}  // namespace

TEST_CASE("control capacities") {
  CHECK(control_capacities(4) == std::vector<int>{3, 4, 4});
  CHECK(control_capacities(2) == std::vector<int>{1});
  for (int k : {2, 4, 6, 8, 10}) {
    CHECK(control_sum(k) == (k / 2) * (k / 2));
    CHECK(control_capacities(k).back() == (k / 2) * (k / 2));
  }
}

TEST_CASE("mcc reduction layout for k = 4") {
  MccInput input{4, {{0, 1}, {1, 2}}, {0, 1, 2, 3}};
  Instance in = reduce_mcc(input);
  const auto& g = in.graph();
  CHECK(g.vertex_count() == 2 * 4 + 2 * 4);
  CHECK(g.max_degree() == 2);
  CHECK(g.edge_count() == g.vertex_count() - 1);
  CHECK(exact_treewidth(g) == 1);
  CHECK(in.target() == capacity_sum(g));
  CHECK(in.max_route_length() == g.vertex_count());
  // s-side control edges, then p^2 = 4 in the middle, then the mirrored t-side
  CHECK(g.edge(*g.find_edge(0, 1)).capacity == 3);
  CHECK(g.edge(*g.find_edge(1, 2)).capacity == 4);
  CHECK(g.edge(*g.find_edge(2, 3)).capacity == 4);
  CHECK(g.edge(*g.find_edge(3, 4)).capacity == 4);
  const int t1 = 4 + 2 * 4;
  CHECK(g.edge(*g.find_edge(t1, t1 + 1)).capacity == 4);
  CHECK(g.edge(*g.find_edge(t1 + 1, t1 + 2)).capacity == 4);
  CHECK(g.edge(*g.find_edge(t1 + 2, t1 + 3)).capacity == 3);
  // three tasks per vertex plus one per edge, profit = demand * distance
  CHECK(in.task_count() == 3 * 4 + 2);
  for (const Task& t : in.tasks()) CHECK(t.profit == static_cast<Profit>(t.demand) * std::abs(t.target - t.source));
  // vertex task demand uses the colour index: classes 1..4 give 3, 2, 2, 3
  std::vector<int> vertex_demands;
  for (int j = 0; j < 4; ++j) {
    Vertex vs = 4 + 2 * j;
    for (const Task& t : in.tasks())
      if (t.source == vs && t.target == vs + 1) vertex_demands.push_back(t.demand);
  }
  CHECK(vertex_demands == std::vector<int>{3, 2, 2, 3});
}

TEST_CASE("mcc reduction drops zero-demand tasks on request") {
  MccInput input{4, {{0, 1}}, {0, 1, 2, 3}};
  Instance all = reduce_mcc(input);
  Instance trimmed = reduce_mcc(input, true);
  CHECK(trimmed.task_count() < all.task_count());
  for (const Task& t : trimmed.tasks()) CHECK(t.demand > 0);
  CHECK(trimmed.target() == all.target());
}

TEST_CASE("mcc k = 2 with and without the edge") {
  MccInput yes{2, {{0, 1}}, {0, 1}};
  Instance a = reduce_mcc(yes);
  CHECK(a.graph().vertex_count() == 8);
  CHECK(a.target() == 7);
  CHECK(solve_exhaustive(a).optimum == a.target());
  CHECK(solve_xp(a, nice_of(a.graph())).optimum == a.target());
  MccInput no{2, {}, {0, 1}};
  Instance b = reduce_mcc(no);
  CHECK(solve_exhaustive(b).optimum < b.target());
  CHECK(solve_xp(b, nice_of(b.graph())).optimum < b.target());
}

TEST_CASE("mcc odd class count gains a universal class") {
  MccInput three{3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1, 2}};
  Instance in = reduce_mcc(three);
  CHECK(in.graph().vertex_count() == 2 * 4 + 2 * 4);
  CHECK(check_mcc_bruteforce(three));
  CHECK(solve_xp(in, nice_of(in.graph())).optimum == in.target());
  MccInput open{3, {{0, 1}, {1, 2}}, {0, 1, 2}};
  Instance in2 = reduce_mcc(open);
  CHECK_FALSE(check_mcc_bruteforce(open));
  CHECK(solve_xp(in2, nice_of(in2.graph())).optimum < in2.target());
}

TEST_CASE("mcc input errors") {
  CHECK_THROWS_AS(reduce_mcc(MccInput{2, {}, {0, 2}}), InputError);
  CHECK_THROWS_AS(reduce_mcc(MccInput{2, {}, {0}}), InputError);
  CHECK_THROWS_AS(reduce_mcc(MccInput{2, {{0, 0}}, {0, 1}}), InputError);
  CHECK_THROWS_AS(reduce_mcc(MccInput{2, {{0, 5}}, {0, 1}}), InputError);
  CHECK_THROWS_AS(check_mcc_bruteforce(MccInput{2, {}, {1, 1}}), InputError);
}

TEST_CASE("mcc brute force") {
  CHECK(check_mcc_bruteforce(MccInput{2, {}, {0, 0}}));
  CHECK_FALSE(check_mcc_bruteforce(MccInput{4, {{0, 1}, {2, 3}}, {0, 0, 1, 1}}));
  CHECK(check_mcc_bruteforce(MccInput{4, {{0, 1}, {0, 3}}, {0, 0, 1, 1}}));
  MccInput big{20, {}, std::vector<int>(20, 0)};
  for (int v = 0; v < 20; ++v) big.color[v] = v % 10;
  CHECK_THROWS_AS(check_mcc_bruteforce(big, 100), LimitExceeded);
}

TEST_CASE("mcc equivalence on two-per-class inputs with four classes") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 6; ++round) {
    MccInput input{8, {}, {0, 0, 1, 1, 2, 2, 3, 3}};
    for (int a = 0; a < 8; ++a)
      for (int b = a + 1; b < 8; ++b)
        if (input.color[a] != input.color[b] && rng() % 3 != 0) input.edges.emplace_back(a, b);
    Instance in = reduce_mcc(input);
    auto r = solve_xp(in, nice_of(in.graph()));
    CHECK(check_mcc_bruteforce(input) == (r.optimum >= in.target()));
    CHECK(verify_routing(in, r.witness).valid);
  }
}

TEST_CASE("bin packing reduction structure") {
  BinPackingInput input{3, 4, {4, 2, 2, 3, 1}};
  Instance in = reduce_binpacking(input);
  const auto& g = in.graph();
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 6);
  CHECK(g.max_degree() == 3);
  CHECK(in.target() == 5);
  CHECK(in.max_route_length() == 2);
  for (const Edge& e : g.edges()) CHECK(e.capacity == 4);
  for (const Path& p : enumerate_paths(g, 0, 1, g.vertex_count())) CHECK(p.size() == 3);
  CHECK(exact_treewidth(g) <= 3);
  CHECK(exact_treewidth(g) == 2);
}

TEST_CASE("bin packing examples") {
  BinPackingInput single{1, 3, {3}};
  CHECK(check_binpacking_bruteforce(single));
  Instance a = reduce_binpacking(single);
  CHECK(solve_fpt(a, nice_of(a.graph())).optimum == 1);

  BinPackingInput no{2, 6, {4, 4, 4}};
  CHECK_FALSE(check_binpacking_bruteforce(no));
  Instance b = reduce_binpacking(no);
  auto rb = solve_fpt(b, nice_of(b.graph()));
  CHECK(rb.optimum == 2);
  CHECK_FALSE(rb.decision);

  BinPackingInput yes{2, 5, {2, 3, 4, 1}};
  CHECK(check_binpacking_bruteforce(yes));
  Instance c = reduce_binpacking(yes);
  auto rc = solve_fpt(c, nice_of(c.graph()));
  CHECK(rc.optimum == 4);
  CHECK(rc.decision);

  CHECK(check_binpacking_bruteforce(BinPackingInput{3, 5, {5, 5, 5}}));
}

TEST_CASE("bin packing errors") {
  CHECK_THROWS_AS(reduce_binpacking(BinPackingInput{2, 5, {2, 3}}), InputError);
  CHECK_THROWS_AS(reduce_binpacking(BinPackingInput{0, 0, {}}), InputError);
  CHECK_THROWS_AS(reduce_binpacking(BinPackingInput{1, 2, {0, 2}}), InputError);
  CHECK_THROWS_AS(check_binpacking_bruteforce(BinPackingInput{2, 5, {2, 3}}), InputError);
  CHECK_THROWS_AS(check_binpacking_bruteforce(BinPackingInput{3, 10, std::vector<int>(30, 1)}, 1000), LimitExceeded);
}

TEST_CASE("random generator is deterministic and respects its bounds") {
  RandomParams p;
  p.vertices = 8;
  p.max_degree = 3;
  p.max_capacity = 3;
  p.tasks = 5;
  p.seed = 1234;
  CHECK(serialize_instance(gen_random(p)) == serialize_instance(gen_random(p)));
  CHECK(gen_random(p).provenance().find("seed=1234") != std::string::npos);
  RandomParams q = p;
  q.seed = 1235;
  CHECK(serialize_instance(gen_random(q)) != serialize_instance(gen_random(p)));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Instance in = small_random(seed);
    CHECK(in.graph().max_degree() <= 3);
    CHECK(in.graph().max_capacity() <= 3);
    CHECK(in.graph().vertex_count() <= 8);
    CHECK(in.task_count() <= 5);
    CHECK(validate(in.graph(), compute_decomposition(in.graph(), DecompositionMode::ExactSmall)).valid);
    CHECK_NOTHROW(solve_exhaustive(in));
  }
  p.tasks = 0;
  CHECK(solve_exhaustive(gen_random(p)).optimum == 0);
}

TEST_CASE("random generator errors") {
  RandomParams p;
  p.max_degree = 0;
  CHECK_THROWS_AS(gen_random(p), InputError);
  p = RandomParams{};
  p.vertices = 1;
  CHECK_THROWS_AS(gen_random(p), InputError);
  p.tasks = 0;
  CHECK_NOTHROW(gen_random(p));
  p = RandomParams{};
  p.demand_min = 4;
  p.demand_max = 2;
  CHECK_THROWS_AS(gen_random(p), InputError);
}

TEST_CASE("text inputs") {
  CHECK(parse_colors("0\n1\n1\n") == std::vector<int>{0, 1, 1});
  CHECK_THROWS_AS(parse_colors("0\nx\n"), InputError);
  CHECK_THROWS_AS(parse_colors("-1\n"), InputError);
  auto edges = parse_edge_list("# comment\n0 1\n\n2 3\n");
  CHECK(edges == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {2, 3}});
  CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), InputError);
  CHECK(parse_items("2 3 4\n1") == std::vector<int>{2, 3, 4, 1});
  CHECK_THROWS_AS(parse_items("2 0"), InputError);
}
