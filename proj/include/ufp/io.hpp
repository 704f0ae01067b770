#pragma once

#include <iosfwd>
#include <string>

#include "ufp/core.hpp"
#include "ufp/treedecomp.hpp"

namespace ufp {

// Instance document:
//   {"num_vertices": n, "edges": [[u, v, capacity], ...], "tasks": [[s, t, demand, profit], ...],
//    "target": tau, "max_route_length": ell, "provenance": "..."}
// `max_route_length` and `provenance` are optional. The writer emits a fixed layout so
// equal instances serialize to identical bytes.
std::string serialize_instance(const Instance& instance);
Instance parse_instance(const std::string& text);

// Routing document: {"routes": [{"task": i, "path": [v0, v1, ...]}, ...]}
std::string serialize_routing(const Routing& routing);
Routing parse_routing(const std::string& text);

std::string serialize_report(const VerificationReport& report);

/// PACE 2017 .td: "s td <bags> <max bag size> <vertices>", "b <id> <v...>" with 1-based
/// ids, then "<id> <id>" tree edges; "c" lines are comments. The first bag becomes the root.
TreeDecomposition parse_pace_td(const std::string& text);
std::string serialize_pace_td(const TreeDecomposition& td, int vertex_count);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace ufp
