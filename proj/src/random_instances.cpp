#include "steklov/random_instances.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "steklov/report.hpp"

namespace steklov {

namespace {

// Bounded draws by rejection on the raw mt19937_64 stream, so instances
// depend only on the engine and not on the standard library's distributions.
int draw(std::mt19937_64& rng, int lo, int hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

// Randomized connected growth inside the pruned view, starting from a
// boundary vertex so the window always meets δΩ.
std::vector<int> grow_window(std::mt19937_64& rng, const Domain& dom,
                             int start, int target) {
  std::vector<int> window;
  std::vector<char> seen(dom.host().vertex_count(), 0);
  std::vector<int> frontier{start};
  seen[start] = 1;
  while (!frontier.empty() && static_cast<int>(window.size()) < target) {
    const int pick = draw(rng, 0, static_cast<int>(frontier.size()) - 1);
    const int v = frontier[pick];
    frontier[pick] = frontier.back();
    frontier.pop_back();
    window.push_back(v);
    for (auto [y, w] : dom.pruned_neighbors(v)) {
      (void)w;
      if (!seen[y]) {
        seen[y] = 1;
        frontier.push_back(y);
      }
    }
  }
  std::sort(window.begin(), window.end());
  return window;
}

}  // namespace

RandomInstance random_instance(uint64_t seed, const RandomOptions& opt) {
  if (opt.min_host < 3 || opt.max_host < opt.min_host ||
      opt.min_window < 1 || opt.max_window < opt.min_window)
    throw input_error("random instance: bad size options");
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < 2000; ++attempt) {
    const int n = draw(rng, opt.min_host, opt.max_host);

    std::vector<std::tuple<int, int, double>> edges;
    std::set<std::pair<int, int>> present;
    auto add_edge = [&](int u, int v) {
      const auto key = std::minmax(u, v);
      if (!present.insert(key).second) return;
      edges.emplace_back(u, v, static_cast<double>(draw(rng, 1, 5)));
    };
    for (int v = 1; v < n; ++v) add_edge(draw(rng, 0, v - 1), v);
    const int extra = draw(rng, 0, n);
    for (int t = 0; t < extra; ++t)
      add_edge(draw(rng, 0, n - 1), draw(rng, 0, n - 1));
    if (chance(rng, opt.loop_probability)) {
      const int v = draw(rng, 0, n - 1);
      add_edge(v, v);
    }

    std::vector<int> interior;
    for (int v = 0; v < n; ++v)
      if (chance(rng, 0.55)) interior.push_back(v);
    if (interior.empty() || static_cast<int>(interior.size()) == n) continue;

    const WeightedGraph host(n, edges);
    const Domain dom(host, interior);
    if (dom.boundary_count() < 1) continue;
    if (static_cast<int>(dom.closure().size()) < opt.min_window) continue;

    std::vector<int> boundary_ids;
    for (int v : dom.closure())
      if (dom.role(v) == Role::Boundary) boundary_ids.push_back(v);
    const int start = boundary_ids[draw(
        rng, 0, static_cast<int>(boundary_ids.size()) - 1)];
    const int cap =
        std::min(opt.max_window, static_cast<int>(dom.closure().size()));
    const int target = draw(rng, opt.min_window, cap);
    const std::vector<int> window = grow_window(rng, dom, start, target);
    if (static_cast<int>(window.size()) < opt.min_window) continue;

    int n_boundary = 0, n_interior = 0;
    for (int v : window) {
      if (dom.role(v) == Role::Boundary) ++n_boundary;
      if (dom.role(v) == Role::Interior) ++n_interior;
    }
    if (n_boundary < opt.min_boundary || n_interior < opt.min_interior)
      continue;

    NamedGraph g;
    g.graph = host;
    for (int v = 0; v < n; ++v) g.names.push_back(std::to_string(v));
    g.interior = interior;
    g.source = "random-" + std::to_string(seed);
    g.content_hash = hash_hex(graph_to_json(g));

    RandomInstance inst;
    inst.graph = std::move(g);
    inst.window = window;
    inst.seed = seed;
    return inst;
  }
  throw convergence_error("random instance: no admissible draw for seed " +
                              std::to_string(seed),
                          0.0);
}

}  // namespace steklov
