#include "ufp/io.hpp"

#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace ufp {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

template <typename T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("field '") + name + "': " + e.what());
  }
}

template <typename Row>
std::string join_row(const Row& row) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(row[i]);
  }
  return out + "]";
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  const auto& g = instance.graph();
  out << "{\n  \"num_vertices\": " << g.vertex_count() << ",\n  \"edges\": [";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << (e ? ",\n    " : "\n    ") << join_row(std::vector<std::int64_t>{edge.u, edge.v, edge.capacity});
  }
  out << (g.edge_count() ? "\n  ]" : "]") << ",\n  \"tasks\": [";
  for (int i = 0; i < instance.task_count(); ++i) {
    const Task& t = instance.task(i);
    out << (i ? ",\n    " : "\n    ") << join_row(std::vector<std::int64_t>{t.source, t.target, t.demand, t.profit});
  }
  out << (instance.task_count() ? "\n  ]" : "]") << ",\n  \"target\": " << instance.target()
      << ",\n  \"max_route_length\": " << instance.max_route_length();
  if (!instance.provenance().empty()) out << ",\n  \"provenance\": " << json(instance.provenance()).dump();
  out << "\n}\n";
  return out.str();
}

Instance parse_instance(const std::string& text) {
  json doc = parse_json(text, "instance");
  if (!doc.is_object()) throw InputError("instance: expected an object");
  int n = field<int>(doc, "num_vertices");
  CapacitatedGraph graph(n);
  for (const auto& row : field<std::vector<std::vector<std::int64_t>>>(doc, "edges")) {
    if (row.size() != 3) throw InputError("edge entries must be [u, v, capacity]");
    if (row[0] >= row[1]) throw InputError("edge entries must satisfy u < v");
    graph.add_edge(static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]), static_cast<int>(row[2]));
  }
  std::vector<Task> tasks;
  for (const auto& row : field<std::vector<std::vector<std::int64_t>>>(doc, "tasks")) {
    if (row.size() != 4) throw InputError("task entries must be [s, t, demand, profit]");
    tasks.push_back(Task{static_cast<Vertex>(row[0]), static_cast<Vertex>(row[1]), static_cast<int>(row[2]), row[3]});
  }
  Profit target = field<Profit>(doc, "target");
  std::optional<int> ell;
  if (doc.contains("max_route_length") && !doc["max_route_length"].is_null()) ell = field<int>(doc, "max_route_length");
  std::string provenance;
  if (doc.contains("provenance")) provenance = field<std::string>(doc, "provenance");
  return Instance(std::move(graph), std::move(tasks), target, ell, std::move(provenance));
}

std::string serialize_routing(const Routing& routing) {
  std::ostringstream out;
  out << "{\n  \"routes\": [";
  bool first = true;
  for (const auto& [task, path] : routing.routes) {
    out << (first ? "\n    " : ",\n    ") << "{\"task\": " << task << ", \"path\": " << join_row(path) << "}";
    first = false;
  }
  out << (routing.routes.empty() ? "]" : "\n  ]") << "\n}\n";
  return out.str();
}

Routing parse_routing(const std::string& text) {
  json doc = parse_json(text, "routing");
  if (!doc.is_object()) throw InputError("routing: expected an object");
  Routing routing;
  for (const auto& entry : field<std::vector<json>>(doc, "routes")) {
    TaskId task = field<TaskId>(entry, "task");
    if (routing.routes.count(task)) throw InputError("task " + std::to_string(task) + " routed twice");
    routing.routes[task] = field<Path>(entry, "path");
  }
  return routing;
}

std::string serialize_report(const VerificationReport& report) {
  json doc;
  doc["valid"] = report.valid;
  doc["profit"] = report.profit;
  doc["violations"] = json::array();
  for (const auto& v : report.violations) {
    json item{{"kind", to_string(v.kind)}, {"detail", v.detail}};
    if (v.task >= 0) item["task"] = v.task;
    if (v.edge >= 0) item["edge"] = v.edge;
    doc["violations"].push_back(item);
  }
  return doc.dump(2) + "\n";
}

TreeDecomposition parse_pace_td(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int bag_count = -1;
  std::vector<std::vector<Vertex>> bags;
  std::vector<char> seen_bag;
  std::vector<std::vector<int>> adj;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;
    auto bad = [&](const std::string& why) { return InputError(".td line " + std::to_string(line_no) + ": " + why); };
    if (head == "s") {
      std::string td;
      int max_bag = 0, vertices = 0;
      if (!(ls >> td >> bag_count >> max_bag >> vertices) || td != "td" || bag_count < 0) throw bad("malformed header");
      bags.assign(bag_count, {});
      seen_bag.assign(bag_count, 0);
      adj.assign(bag_count, {});
    } else if (bag_count < 0) {
      throw bad("content before the 's td' header");
    } else if (head == "b") {
      int id = 0;
      if (!(ls >> id) || id < 1 || id > bag_count) throw bad("bad bag id");
      if (seen_bag[id - 1]) throw bad("bag listed twice");
      seen_bag[id - 1] = 1;
      int v = 0;
      while (ls >> v) {
        if (v < 1) throw bad("vertex ids are 1-based");
        bags[id - 1].push_back(v - 1);
      }
      std::sort(bags[id - 1].begin(), bags[id - 1].end());
    } else {
      int a = 0, b = 0;
      try {
        a = std::stoi(head);
      } catch (const std::exception&) {
        throw bad("unrecognized line");
      }
      if (!(ls >> b) || a < 1 || b < 1 || a > bag_count || b > bag_count || a == b) throw bad("bad tree edge");
      adj[a - 1].push_back(b - 1);
      adj[b - 1].push_back(a - 1);
    }
  }
  if (bag_count < 0) throw InputError(".td: missing header");
  TreeDecomposition td;
  td.bags = bags;
  td.parent.assign(bag_count, -2);
  if (bag_count == 0) return td;
  std::queue<int> q;
  td.parent[0] = -1;
  q.push(0);
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x]) {
      if (td.parent[y] != -2) continue;
      td.parent[y] = x;
      ++reached;
      q.push(y);
    }
  }
  if (reached != bag_count) throw InputError(".td: tree edges do not connect all bags");
  int edges = 0;
  for (const auto& a : adj) edges += static_cast<int>(a.size());
  if (edges / 2 != bag_count - 1) throw InputError(".td: tree edges do not form a tree");
  return td;
}

std::string serialize_pace_td(const TreeDecomposition& td, int vertex_count) {
  std::ostringstream out;
  int max_bag = 0;
  for (const auto& b : td.bags) max_bag = std::max(max_bag, static_cast<int>(b.size()));
  out << "s td " << td.node_count() << ' ' << max_bag << ' ' << vertex_count << '\n';
  // Root first so that re-reading preserves the rooting.
  std::vector<int> order;
  int root = td.root();
  auto children = td.children();
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    order.push_back(x);
    for (auto it = children[x].rbegin(); it != children[x].rend(); ++it) stack.push_back(*it);
  }
  std::vector<int> id(td.node_count());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<int>(i) + 1;
  for (int x : order) {
    out << "b " << id[x];
    for (Vertex v : td.bags[x]) out << ' ' << v + 1;
    out << '\n';
  }
  for (int x : order)
    if (td.parent[x] >= 0) out << id[td.parent[x]] << ' ' << id[x] << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

}  // namespace ufp
