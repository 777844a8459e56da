#include "steklov/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "steklov/report.hpp"

namespace steklov {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_or_throw(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(origin + ": parse error at byte " +
                      std::to_string(e.byte) + ": " + e.what());
  }
}

std::string vertex_name(const json& v, const std::string& origin) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<int64_t>());
  throw input_error(origin + ": vertex ids must be strings");
}

}  // namespace

int NamedGraph::index_of(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw input_error(source + ": unknown vertex '" + name + "'");
}

NamedGraph parse_graph_json(const std::string& text,
                            const std::string& origin) {
  const json doc = parse_or_throw(text, origin);
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw input_error(origin + ": expected an object with vertices and edges");

  NamedGraph g;
  g.source = origin;
  g.content_hash = hash_hex(text);

  std::unordered_map<std::string, int> index;
  for (const json& v : doc.at("vertices")) {
    std::string name;
    std::string role = "boundary-candidate";
    if (v.is_object()) {
      if (!v.contains("id"))
        throw input_error(origin + ": vertex entry without id");
      name = vertex_name(v.at("id"), origin);
      if (v.contains("role")) role = v.at("role").get<std::string>();
    } else {
      name = vertex_name(v, origin);
    }
    if (role != "interior" && role != "boundary-candidate")
      throw input_error(origin + ": unknown vertex role '" + role + "'");
    if (!index.emplace(name, static_cast<int>(g.names.size())).second)
      throw input_error(origin + ": duplicate vertex '" + name + "'");
    if (role == "interior")
      g.interior.push_back(static_cast<int>(g.names.size()));
    g.names.push_back(name);
  }

  std::vector<std::tuple<int, int, double>> edges;
  for (const json& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw input_error(origin + ": edges must be [u, v, weight] triples");
    const std::string u = vertex_name(e[0], origin);
    const std::string v = vertex_name(e[1], origin);
    const auto iu = index.find(u), iv = index.find(v);
    if (iu == index.end() || iv == index.end())
      throw input_error(origin + ": edge endpoint '" +
                        (iu == index.end() ? u : v) + "' is not a vertex");
    if (!e[2].is_number())
      throw input_error(origin + ": edge weight must be a number");
    edges.emplace_back(iu->second, iv->second, e[2].get<double>());
  }
  g.graph = WeightedGraph(static_cast<int>(g.names.size()), edges);
  return g;
}

NamedGraph load_graph_json(const std::string& path) {
  return parse_graph_json(read_file(path), path);
}

Domain domain_from(const NamedGraph& g) {
  if (g.interior.empty())
    throw input_error(g.source + ": no vertex has role 'interior'");
  return Domain(g.graph, g.interior);
}

namespace {

bool parse_int(const std::string& s, int& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

}  // namespace

std::vector<int> parse_window_spec(const NamedGraph& g,
                                   const std::string& spec) {
  if (spec.empty()) throw input_error("empty window spec");
  const Domain dom = domain_from(g);
  if (spec == "all") return dom.closure();

  const size_t dots = spec.find("..");
  if (dots != std::string::npos) {
    int lo, hi;
    if (!parse_int(spec.substr(0, dots), lo) ||
        !parse_int(spec.substr(dots + 2), hi) || lo > hi)
      throw input_error("bad window range '" + spec + "'");
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) {
      if (v < 0 || v >= g.graph.vertex_count())
        throw input_error("window range vertex " + std::to_string(v) +
                          " out of range");
      out.push_back(v);
    }
    return out;
  }

  std::vector<int> out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw input_error("empty token in window spec");
    const auto it = std::find(g.names.begin(), g.names.end(), token);
    if (it != g.names.end()) {
      out.push_back(static_cast<int>(it - g.names.begin()));
      continue;
    }
    int v;
    if (!parse_int(token, v) || v < 0 || v >= g.graph.vertex_count())
      throw input_error("unknown window vertex '" + token + "'");
    out.push_back(v);
  }
  return out;
}

std::unique_ptr<GraphFamily> make_family(const std::string& spec) {
  std::string text = spec;
  std::string origin = "family spec";
  if (!spec.empty() && spec.front() != '{') {
    text = read_file(spec);
    origin = spec;
  }
  const json doc = parse_or_throw(text, origin);
  if (!doc.is_object() || !doc.contains("family"))
    throw input_error(origin + ": expected {\"family\": ...}");
  const std::string kind = doc.at("family").get<std::string>();

  if (kind == "half_line") return half_line_family();
  if (kind == "regular_tree") {
    const int degree = doc.value("degree", 3);
    if (degree < 3)
      throw input_error(origin + ": regular_tree needs degree >= 3");
    return regular_tree_family(degree);
  }
  if (kind == "binary_tree_weighted") {
    if (!doc.contains("ratio"))
      throw input_error(origin + ": binary_tree_weighted needs a ratio");
    return weighted_binary_tree_family(doc.at("ratio").get<double>());
  }
  if (kind == "finite_file") {
    if (!doc.contains("path"))
      throw input_error(origin + ": finite_file needs a path");
    const std::string path = doc.at("path").get<std::string>();
    const NamedGraph g = load_graph_json(path);
    return finite_family(domain_from(g), path);
  }
  throw input_error(origin + ": unknown family '" + kind + "'");
}

std::string graph_to_json(const NamedGraph& g) {
  ordered_json doc;
  doc["vertices"] = ordered_json::array();
  std::vector<char> is_interior(g.names.size(), 0);
  for (const int v : g.interior) is_interior[v] = 1;
  for (size_t v = 0; v < g.names.size(); ++v) {
    ordered_json entry;
    entry["id"] = g.names[v];
    entry["role"] = is_interior[v] ? "interior" : "boundary-candidate";
    doc["vertices"].push_back(entry);
  }
  doc["edges"] = ordered_json::array();
  for (int x = 0; x < g.graph.vertex_count(); ++x) {
    for (const auto& [y, w] : g.graph.neighbors(x)) {
      if (y < x) continue;  // each undirected edge once
      doc["edges"].push_back(
          ordered_json::array({g.names[x], g.names[y], w}));
    }
  }
  return dump_json(doc);
}

}  // namespace steklov
