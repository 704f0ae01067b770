#include "ufp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ufp/generators.hpp"
#include "ufp/io.hpp"
#include "ufp/oracle.hpp"
#include "ufp/solver_fpt.hpp"
#include "ufp/solver_xp.hpp"
#include "ufp/treedecomp.hpp"

namespace ufp::cli {

namespace {

using nlohmann::json;

struct SolveFlags {
  std::string algo = "xp";
  std::string instance;
  std::string td;
  std::string witness;
  bool json = false;
  std::optional<int> max_len;
  double budget = 1e8;
  std::size_t max_table = 2'000'000;
};

struct DecomposeFlags {
  std::string instance;
  std::string out;
  bool nice = false;
  bool exact = false;
};

struct MccFlags {
  std::string colors;
  std::string graph;
  bool drop_zero = false;
};

struct BinpackFlags {
  int bins = 0;
  int capacity = 0;
  std::string items;
  std::string items_file;
};

TreeDecomposition auto_decomposition(const CapacitatedGraph& graph, bool force_exact = false) {
  bool exact = force_exact || graph.vertex_count() <= 16;
  return compute_decomposition(graph, exact ? DecompositionMode::ExactSmall : DecompositionMode::Heuristic,
                               std::max(16, graph.vertex_count()));
}

OptimalResult solve_with(const std::string& algo, const Instance& instance, const std::optional<TreeDecomposition>& given,
                         const SolveFlags& flags, std::ostream& err) {
  if (algo == "brute") return solve_exhaustive(instance, ExhaustiveOptions{flags.budget});
  TreeDecomposition td = given ? *given : auto_decomposition(instance.graph());
  NiceTreeDecomposition nice = to_nice(instance.graph(), td);
  err << "decomposition width " << nice.width() << "\n";
  if (algo == "xp") {
    XpOptions options;
    options.max_table_size = flags.max_table;
    return solve_xp(instance, nice, options);
  }
  FptOptions options;
  options.max_table_size = flags.max_table;
  return solve_fpt(instance, nice, options);
}

Instance load_instance(const std::string& path, std::optional<int> max_len) {
  Instance instance = parse_instance(read_file(path));
  return max_len ? instance.with_max_route_length(*max_len) : instance;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

int cmd_solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  Instance instance = load_instance(flags.instance, flags.max_len);
  std::optional<TreeDecomposition> td;
  if (!flags.td.empty()) td = parse_pace_td(read_file(flags.td));
  OptimalResult result = solve_with(flags.algo, instance, td, flags, err);
  if (!flags.witness.empty()) write_file(flags.witness, serialize_routing(result.witness));
  if (flags.json) {
    json doc{{"algo", flags.algo},
             {"profit", result.optimum},
             {"decision", result.decision ? "yes" : "no"},
             {"target", instance.target()},
             {"nodes", result.stats.nodes},
             {"max_table_size", result.stats.max_table_size}};
    out << doc.dump() << "\n";
  } else {
    out << "profit=" << result.optimum << " decision=" << (result.decision ? "yes" : "no") << "\n";
  }
  return result.decision ? kYes : kNo;
}

int cmd_verify(const std::string& instance_path, const std::string& routing_path, std::ostream& out) {
  Instance instance = parse_instance(read_file(instance_path));
  Routing routing = parse_routing(read_file(routing_path));
  out << serialize_report(verify_routing(instance, routing));
  return kYes;
}

int cmd_decompose(const DecomposeFlags& flags, std::ostream& out, std::ostream& err) {
  Instance instance = parse_instance(read_file(flags.instance));
  const auto& graph = instance.graph();
  TreeDecomposition td = auto_decomposition(graph, flags.exact);
  if (flags.nice) td = to_nice(graph, td).as_plain();
  err << "decomposition width " << td.width() << "\n";
  emit(serialize_pace_td(td, graph.vertex_count()), flags.out, out);
  return kYes;
}

RandomParams random_from_json(const json& doc) {
  RandomParams p;
  auto get = [&](const char* key, auto& slot) {
    if (doc.contains(key)) slot = doc.at(key).get<std::decay_t<decltype(slot)>>();
  };
  get("n", p.vertices);
  get("max_degree", p.max_degree);
  get("max_capacity", p.max_capacity);
  get("tasks", p.tasks);
  get("demand_min", p.demand_min);
  get("demand_max", p.demand_max);
  get("profit_min", p.profit_min);
  get("profit_max", p.profit_max);
  get("target", p.target);
  get("seed", p.seed);
  if (doc.contains("max_len")) p.max_route_length = doc.at("max_len").get<int>();
  return p;
}

int cmd_bench(const std::string& suite_path, std::ostream& out, std::ostream& err) {
  json suite;
  try {
    suite = json::parse(read_file(suite_path));
  } catch (const json::exception& e) {
    throw InputError(std::string("suite: ") + e.what());
  }
  std::vector<std::string> algos{"brute", "xp", "fpt"};
  std::vector<std::pair<std::string, Instance>> instances;
  const auto base = std::filesystem::path(suite_path).parent_path();
  try {
    if (suite.contains("algos")) algos = suite.at("algos").get<std::vector<std::string>>();
    for (const auto& entry : suite.at("instances")) {
      std::string name = entry.at("name").get<std::string>();
      if (entry.contains("path")) {
        std::filesystem::path p = entry.at("path").get<std::string>();
        if (p.is_relative()) p = base / p;
        instances.emplace_back(name, parse_instance(read_file(p.string())));
      } else {
        instances.emplace_back(name, gen_random(random_from_json(entry.at("random"))));
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("suite: ") + e.what());
  }
  for (const auto& a : algos)
    if (a != "brute" && a != "xp" && a != "fpt") throw InputError("suite: unknown algorithm " + a);
  std::stable_sort(instances.begin(), instances.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::ostringstream discard;
  SolveFlags flags;
  out << "instance,algo,optimum,nodes,max_table_size,wall_ms\n";
  for (const auto& [name, instance] : instances) {
    for (const auto& algo : algos) {
      auto start = std::chrono::steady_clock::now();
      std::string optimum, nodes, table;
      try {
        OptimalResult r = solve_with(algo, instance, std::nullopt, flags, discard);
        optimum = std::to_string(r.optimum);
        nodes = std::to_string(r.stats.nodes);
        table = std::to_string(r.stats.max_table_size);
      } catch (const LimitExceeded& e) {
        optimum = "limit";
        err << name << "/" << algo << ": " << e.what() << "\n";
      }
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      out << name << ',' << algo << ',' << optimum << ',' << nodes << ',' << table << ',' << std::fixed
          << std::setprecision(3) << ms << '\n';
      out.unsetf(std::ios::fixed);
    }
  }
  return kYes;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers for Unsplittable Flow on capacitated graphs", "ufp"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute the optimum profit");
  solve_cmd->add_option("--algo", solve.algo, "brute | xp | fpt")->check(CLI::IsMember({"brute", "xp", "fpt"}));
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
  solve_cmd->add_option("--td", solve.td, "PACE .td decomposition");
  solve_cmd->add_option("--witness", solve.witness, "Write the optimal routing here");
  solve_cmd->add_flag("--json", solve.json, "Print a JSON summary");
  solve_cmd->add_option("--max-len", solve.max_len, "Override the maximum route length")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--budget", solve.budget, "Search-space budget for brute");
  solve_cmd->add_option("--max-table", solve.max_table, "Table size limit for xp and fpt");

  std::string verify_instance, verify_routing_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a routing against an instance");
  verify_cmd->add_option("--instance", verify_instance, "Instance JSON")->required();
  verify_cmd->add_option("--routing", verify_routing_path, "Routing JSON")->required();

  DecomposeFlags decompose;
  auto* decompose_cmd = app.add_subcommand("decompose", "Emit a tree decomposition in PACE .td format");
  decompose_cmd->add_option("--instance", decompose.instance, "Instance JSON")->required();
  decompose_cmd->add_flag("--nice", decompose.nice, "Emit the nice form");
  decompose_cmd->add_flag("--exact", decompose.exact, "Minimum width search regardless of size");
  decompose_cmd->add_option("--out", decompose.out, "Output file (default stdout)");

  std::string generate_out;
  auto* generate_cmd = app.add_subcommand("generate", "Emit an instance");
  generate_cmd->require_subcommand(1);
  generate_cmd->add_option("--out", generate_out, "Output file (default stdout)");

  MccFlags mcc;
  auto* mcc_cmd = generate_cmd->add_subcommand("mcc", "Path instance from a multicolored clique input");
  mcc_cmd->add_option("--colors", mcc.colors, "One class id per vertex line")->required();
  mcc_cmd->add_option("--graph", mcc.graph, "One 'u v' edge per line")->required();
  mcc_cmd->add_flag("--drop-zero", mcc.drop_zero, "Omit zero-demand tasks");

  BinpackFlags binpack;
  auto* binpack_cmd = generate_cmd->add_subcommand("binpack", "Instance from a unary bin packing input");
  binpack_cmd->add_option("--bins", binpack.bins)->required();
  binpack_cmd->add_option("--capacity", binpack.capacity)->required();
  auto* items_opt = binpack_cmd->add_option("--items", binpack.items, "Space separated sizes");
  auto* items_file_opt = binpack_cmd->add_option("--items-file", binpack.items_file, "File of sizes");
  items_opt->excludes(items_file_opt);

  RandomParams random;
  std::optional<int> random_max_len;
  auto* random_cmd = generate_cmd->add_subcommand("random", "Seeded random instance");
  random_cmd->add_option("--n", random.vertices);
  random_cmd->add_option("--max-degree", random.max_degree);
  random_cmd->add_option("--max-capacity", random.max_capacity);
  random_cmd->add_option("--tasks", random.tasks);
  random_cmd->add_option("--demand-min", random.demand_min);
  random_cmd->add_option("--demand-max", random.demand_max);
  random_cmd->add_option("--profit-min", random.profit_min);
  random_cmd->add_option("--profit-max", random.profit_max);
  random_cmd->add_option("--max-len", random_max_len);
  random_cmd->add_option("--target", random.target);
  random_cmd->add_option("--seed", random.seed);

  std::string suite;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and print CSV");
  bench_cmd->add_option("--suite", suite, "Suite JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kInvalidInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*verify_cmd) return cmd_verify(verify_instance, verify_routing_path, out);
    if (*decompose_cmd) return cmd_decompose(decompose, out, err);
    if (*bench_cmd) return cmd_bench(suite, out, err);
    if (*mcc_cmd) {
      MccInput input;
      input.color = parse_colors(read_file(mcc.colors));
      input.vertex_count = static_cast<int>(input.color.size());
      input.edges = parse_edge_list(read_file(mcc.graph));
      emit(serialize_instance(reduce_mcc(input, mcc.drop_zero)), generate_out, out);
    } else if (*binpack_cmd) {
      BinPackingInput input{binpack.bins, binpack.capacity, {}};
      input.items = parse_items(binpack.items_file.empty() ? binpack.items : read_file(binpack.items_file));
      emit(serialize_instance(reduce_binpacking(input)), generate_out, out);
    } else if (*random_cmd) {
      random.max_route_length = random_max_len;
      emit(serialize_instance(gen_random(random)), generate_out, out);
    }
    return kYes;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kLimitExceeded;
  }
}

}  // namespace ufp::cli
