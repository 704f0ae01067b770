#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "ufp/cli.hpp"
#include "ufp/io.hpp"

#include <filesystem>
#include <sstream>

using namespace ufp;
using namespace ufp::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("ufp_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    auto p = (dir / name).string();
    write_file(p, text);
    return p;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("solve on a task-free instance says no") {
  Scratch s;
  auto inst = s.put("empty.json", serialize_instance(Instance(path_graph(3), {}, 1)));
  auto r = call({"solve", "--algo", "brute", "--instance", inst});
  CHECK(r.code == cli::kNo);
  CHECK(r.out == "profit=0 decision=no\n");
}

TEST_CASE("solve: all algorithms agree and witnesses verify") {
  Scratch s;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    Instance in = small_random(seed * 13 + 5, 3);
    auto inst = s.put("in.json", serialize_instance(in));
    std::string first;
    for (std::string algo : {"brute", "xp", "fpt"}) {
      auto wit = s.path("w_" + algo + ".json");
      auto r = call({"solve", "--algo", algo, "--instance", inst, "--witness", wit});
      CHECK((r.code == cli::kYes || r.code == cli::kNo));
      if (first.empty()) first = r.out;
      CHECK(r.out == first);
      auto v = call({"verify", "--instance", inst, "--routing", wit});
      CHECK(v.code == 0);
      CHECK(v.out.find("\"valid\": true") != std::string::npos);
      auto profit = r.out.substr(7, r.out.find(' ') - 7);
      CHECK(v.out.find("\"profit\": " + profit) != std::string::npos);
    }
  }
}

TEST_CASE("solve with a supplied decomposition, json output and max-len override") {
  Scratch s;
  Instance in(make_graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}), {Task{0, 1, 1, 2}, Task{0, 1, 1, 3}}, 5);
  auto inst = s.put("tri.json", serialize_instance(in));
  auto td = s.put("tri.td", "s td 1 3 3\nb 1 1 2 3\n");
  auto r = call({"solve", "--algo", "xp", "--instance", inst, "--td", td});
  CHECK(r.code == cli::kYes);
  CHECK(r.out == "profit=5 decision=yes\n");
  auto j = call({"solve", "--algo", "fpt", "--instance", inst, "--json", "--max-len", "1"});
  CHECK(j.code == cli::kNo);
  CHECK(j.out.find("\"profit\":3") != std::string::npos);
  CHECK(j.out.find("\"decision\":\"no\"") != std::string::npos);
  auto bad_td = s.put("bad.td", "s td 1 2 3\nb 1 1 2\n");
  CHECK(call({"solve", "--algo", "xp", "--instance", inst, "--td", bad_td}).code == cli::kInvalidInput);
}

TEST_CASE("verify reports an invalid routing") {
  Scratch s;
  Instance in(make_graph(2, {{0, 1, 5}}), {Task{0, 1, 3, 7}, Task{0, 1, 3, 1}}, 0);
  auto inst = s.put("k2.json", serialize_instance(in));
  auto good = s.put("good.json", R"({"routes": [{"task": 0, "path": [0, 1]}]})");
  auto v = call({"verify", "--instance", inst, "--routing", good});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"valid\": true") != std::string::npos);
  CHECK(v.out.find("\"profit\": 7") != std::string::npos);
  auto over = s.put("over.json", R"({"routes": [{"task": 0, "path": [0, 1]}, {"task": 1, "path": [0, 1]}]})");
  auto w = call({"verify", "--instance", inst, "--routing", over});
  CHECK(w.code == 0);
  CHECK(w.out.find("\"valid\": false") != std::string::npos);
  CHECK(w.out.find("overload") != std::string::npos);
  auto wrong = s.put("wrong.json", R"({"routes": [{"task": 4, "path": [0, 1]}]})");
  CHECK(call({"verify", "--instance", inst, "--routing", wrong}).code == cli::kInvalidInput);
}

TEST_CASE("decompose emits a usable .td") {
  Scratch s;
  Instance in(cycle_graph(5), {}, 0);
  auto inst = s.put("c5.json", serialize_instance(in));
  auto r = call({"decompose", "--instance", inst});
  CHECK(r.code == 0);
  auto td = parse_pace_td(r.out);
  CHECK(validate(in.graph(), td).valid);
  CHECK(td.width() == 2);
  auto out = s.path("nice.td");
  CHECK(call({"decompose", "--instance", inst, "--nice", "--exact", "--out", out}).code == 0);
  auto nice = parse_pace_td(read_file(out));
  CHECK(validate(in.graph(), nice).valid);
  CHECK(nice.width() == 2);
}

TEST_CASE("generate subcommands") {
  Scratch s;
  auto a = call({"generate", "random", "--n", "6", "--tasks", "3", "--seed", "42"});
  auto b = call({"generate", "random", "--n", "6", "--tasks", "3", "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(parse_instance(a.out).graph().vertex_count() == 6);
  CHECK(parse_instance(a.out).provenance().find("seed=42") != std::string::npos);

  auto bp = call({"generate", "binpack", "--bins", "2", "--capacity", "5", "--items", "2 3 4 1"});
  CHECK(bp.code == 0);
  Instance packing = parse_instance(bp.out);
  CHECK(packing.task_count() == 4);
  CHECK(packing.target() == 4);
  auto items = s.put("items.txt", "4 4 4\n");
  auto out = s.path("bp.json");
  CHECK(call({"generate", "--out", out, "binpack", "--bins", "2", "--capacity", "6", "--items-file", items}).code == 0);
  auto solved = call({"solve", "--algo", "fpt", "--instance", out});
  CHECK(solved.code == cli::kNo);
  CHECK(solved.out == "profit=2 decision=no\n");
  CHECK(call({"generate", "binpack", "--bins", "2", "--capacity", "5", "--items", "2 3"}).code == cli::kInvalidInput);

  auto colors = s.put("colors.txt", "0\n1\n");
  auto graph = s.put("graph.txt", "0 1\n");
  auto mcc = call({"generate", "mcc", "--colors", colors, "--graph", graph});
  CHECK(mcc.code == 0);
  auto inst = s.put("mcc.json", mcc.out);
  CHECK(call({"solve", "--algo", "xp", "--instance", inst}).out == "profit=7 decision=yes\n");
  auto trimmed = call({"generate", "mcc", "--colors", colors, "--graph", graph, "--drop-zero"});
  CHECK(parse_instance(trimmed.out).task_count() < parse_instance(mcc.out).task_count());
}

TEST_CASE("bench prints sorted CSV") {
  Scratch s;
  auto inst = s.put("k2.json", serialize_instance(Instance(make_graph(2, {{0, 1, 5}}), {Task{0, 1, 3, 7}}, 0)));
  auto suite = s.put("suite.json", R"({
    "algos": ["brute", "xp", "fpt"],
    "instances": [
      {"name": "zeta", "random": {"n": 5, "tasks": 3, "seed": 7, "max_len": 3}},
      {"name": "alpha", "path": "k2.json"}
    ]})");
  (void)inst;
  auto r = call({"bench", "--suite", suite});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "instance,algo,optimum,nodes,max_table_size,wall_ms");
  CHECK(rows[1].rfind("alpha,brute,7,", 0) == 0);
  CHECK(rows[2].rfind("alpha,xp,7,", 0) == 0);
  CHECK(rows[3].rfind("alpha,fpt,7,", 0) == 0);
  CHECK(rows[4].rfind("zeta,brute,", 0) == 0);
  auto optimum = [](const std::string& row) {
    auto a = row.find(',', row.find(',') + 1);
    return row.substr(a + 1, row.find(',', a + 1) - a - 1);
  };
  CHECK(optimum(rows[4]) == optimum(rows[5]));
  CHECK(optimum(rows[4]) == optimum(rows[6]));
}

TEST_CASE("exit codes for bad input and limits") {
  Scratch s;
  CHECK(call({}).code == cli::kInvalidInput);
  CHECK(call({"solve"}).code == cli::kInvalidInput);
  CHECK(call({"solve", "--algo", "magic", "--instance", "x"}).code == cli::kInvalidInput);
  CHECK(call({"solve", "--instance", s.path("missing.json")}).code == cli::kInvalidInput);
  auto broken = s.put("broken.json", "{\"num_vertices\": 2");
  CHECK(call({"solve", "--instance", broken}).code == cli::kInvalidInput);
  auto inst = s.put("k2.json", serialize_instance(Instance(make_graph(2, {{0, 1, 5}}), {Task{0, 1, 3, 7}}, 0)));
  CHECK(call({"solve", "--algo", "xp", "--instance", inst, "--max-table", "0"}).code == cli::kLimitExceeded);
  CHECK(call({"solve", "--algo", "brute", "--instance", inst, "--budget", "0.5"}).code == cli::kLimitExceeded);
  CHECK(call({"--help"}).code == 0);
}
