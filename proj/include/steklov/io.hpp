#pragma once

#include <memory>
#include <string>
#include <vector>

#include "steklov/exhaustion.hpp"
#include "steklov/graph.hpp"

namespace steklov {

// Host graph with user-facing vertex names and the designated interior set.
// File layout:
//   {"vertices": [{"id": "a", "role": "interior"|"boundary-candidate"}, ...],
//    "edges": [["a", "b", 1.5], ...]}
// The role is advisory for non-interior vertices: the actual boundary is
// always recomputed as the interior's neighborhood.
struct NamedGraph {
  WeightedGraph graph;
  std::vector<std::string> names;  // vertex id -> name, ingestion order
  std::vector<int> interior;       // vertex ids
  std::string source;              // file path or origin tag
  std::string content_hash;        // fnv1a64 of the raw bytes, hex

  int index_of(const std::string& name) const;  // input_error when unknown
};

NamedGraph parse_graph_json(const std::string& text,
                            const std::string& origin);
NamedGraph load_graph_json(const std::string& path);

Domain domain_from(const NamedGraph& g);

// Window selector over the closed domain:
//   "all"            every vertex of the closure,
//   "i..j"           inclusive range of ingestion indices,
//   "a,b,c"          comma-separated vertex names (indices as fallback).
std::vector<int> parse_window_spec(const NamedGraph& g,
                                   const std::string& spec);

// Family selector: inline JSON or a path to a JSON file shaped like
//   {"family":"regular_tree","degree":3}
//   {"family":"half_line"}
//   {"family":"binary_tree_weighted","ratio":0.5}
//   {"family":"finite_file","path":"graph.json"}
std::unique_ptr<GraphFamily> make_family(const std::string& spec);

// Replay dump in the graph file layout, with any extra fields appended.
std::string graph_to_json(const NamedGraph& g);

}  // namespace steklov
