#include "steklov/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace steklov {

WeightedGraph::WeightedGraph(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
  if (n < 0) throw input_error("graph: negative vertex count");
  adj_.resize(n);
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v, w] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw input_error("graph: edge endpoint out of range");
    if (!(w >= 0.0) || std::isinf(w))
      throw input_error("graph: edge weight must be finite and nonnegative");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second)
      throw input_error("graph: duplicate edge {" + std::to_string(u) + "," +
                        std::to_string(v) + "}");
    if (w == 0.0) continue;
    adj_[u].push_back({v, w});
    if (u != v) adj_[v].push_back({u, w});
    ++edge_count_;
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

Domain::Domain(WeightedGraph host, const std::vector<int>& interior)
    : host_(std::move(host)) {
  const int n = host_.vertex_count();
  roles_.assign(n, Role::Outside);
  for (int x : interior) {
    if (x < 0 || x >= n) throw input_error("domain: interior vertex out of range");
    roles_[x] = Role::Interior;
  }
  for (int x = 0; x < n; ++x) {
    if (roles_[x] != Role::Outside) continue;
    for (auto [y, w] : host_.neighbors(x)) {
      (void)w;
      if (roles_[y] == Role::Interior) {
        roles_[x] = Role::Boundary;
        break;
      }
    }
  }

  pruned_.resize(n);
  d_.assign(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (roles_[x] == Role::Outside) {
      ++n_outside_;
      continue;
    }
    for (auto [y, w] : host_.neighbors(x)) {
      const bool keep = (roles_[x] == Role::Interior && roles_[y] != Role::Outside) ||
                        (roles_[y] == Role::Interior && roles_[x] != Role::Outside);
      if (!keep) continue;
      pruned_[x].push_back({y, w});
      d_[x] += w;
    }
    omega_bar_.push_back(x);
    if (roles_[x] == Role::Interior) {
      ++n_interior_;
      if (pruned_[x].empty())
        throw input_error("domain: interior vertex " + std::to_string(x) +
                          " has no neighbors");
    } else {
      ++n_boundary_;
    }
  }
}

Window Domain::make_window(std::vector<int> vertices) const {
  if (vertices.empty()) throw input_error("window: empty vertex set");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  const int n = host_.vertex_count();
  std::vector<char> in_w(n, 0);
  for (int x : vertices) {
    if (x < 0 || x >= n || roles_[x] == Role::Outside)
      throw input_error("window: vertex " + std::to_string(x) +
                        " is not in the closed domain");
    in_w[x] = 1;
  }

  std::vector<int> collar;
  for (int x : vertices)
    for (auto [y, w] : pruned_neighbors(x)) {
      (void)w;
      if (!in_w[y]) {
        collar.push_back(y);
        in_w[y] = 2;  // mark to dedup
      }
    }
  std::sort(collar.begin(), collar.end());

  std::vector<int64_t> ids;
  std::vector<VertexKind> kinds;
  std::vector<double> measures;
  ids.reserve(vertices.size() + collar.size());
  std::unordered_map<int, int> local_of;
  for (int x : vertices) {
    local_of[x] = static_cast<int>(ids.size());
    ids.push_back(x);
    kinds.push_back(roles_[x] == Role::Interior ? VertexKind::Interior
                                                : VertexKind::Boundary);
    measures.push_back(d_[x]);
  }
  for (int z : collar) {
    local_of[z] = static_cast<int>(ids.size());
    ids.push_back(z);
    kinds.push_back(VertexKind::Collar);
    measures.push_back(0.0);  // filled from edges below
  }

  const int n_w = static_cast<int>(vertices.size());
  std::vector<WindowEdge> edges;
  for (int x : vertices) {
    const int lx = local_of[x];
    for (auto [y, w] : pruned_neighbors(x)) {
      const int ly = local_of.at(y);
      if (ly < n_w) {
        if (lx <= ly) edges.push_back({lx, ly, w});
      } else {
        edges.push_back({lx, ly, w});
        measures[ly] += w;
      }
    }
  }
  return Window(std::move(ids), std::move(kinds), std::move(measures),
                std::move(edges));
}

Window Domain::window_all() const { return make_window(omega_bar_); }

Window::Window(std::vector<int64_t> ids, std::vector<VertexKind> kinds,
               std::vector<double> measures, std::vector<WindowEdge> edges)
    : ids_(std::move(ids)),
      kinds_(std::move(kinds)),
      measures_(std::move(measures)),
      edges_(std::move(edges)) {
  const int total = static_cast<int>(ids_.size());
  if (total == 0) throw input_error("window: empty");
  if (kinds_.size() != ids_.size() || measures_.size() != ids_.size())
    throw input_error("window: inconsistent vertex arrays");

  ipos_.assign(total, -1);
  bpos_.assign(total, -1);
  for (int i = 0; i < total; ++i) {
    switch (kinds_[i]) {
      case VertexKind::Interior:
        ipos_[i] = static_cast<int>(interior_.size());
        interior_.push_back(i);
        ++n_window_;
        break;
      case VertexKind::Boundary:
        bpos_[i] = static_cast<int>(boundary_.size());
        boundary_.push_back(i);
        ++n_window_;
        break;
      case VertexKind::Collar:
        break;
    }
    locate_[ids_[i]] = i;
  }
  if (n_window_ == 0) throw input_error("window: no window vertices");
  build_adjacency();
  validate();
}

void Window::build_adjacency() {
  const int total = total_size();
  std::vector<size_t> deg(total, 0);
  for (const auto& e : edges_) {
    ++deg[e.a];
    if (e.b != e.a) ++deg[e.b];
    total_weight_ += e.w;
  }
  off_.assign(total + 1, 0);
  for (int i = 0; i < total; ++i) off_[i + 1] = off_[i] + deg[i];
  nbr_.resize(off_[total]);
  std::vector<size_t> cur(off_.begin(), off_.end() - 1);
  for (const auto& e : edges_) {
    nbr_[cur[e.a]++] = {e.b, e.w};
    if (e.b != e.a) nbr_[cur[e.b]++] = {e.a, e.w};
  }
}

void Window::validate() const {
  const int total = total_size();
  for (int i = 1; i < total; ++i) {
    const bool wi = kinds_[i] != VertexKind::Collar;
    const bool wp = kinds_[i - 1] != VertexKind::Collar;
    if (wi && !wp)
      throw input_error("window: window vertices must precede collar");
    if (wi == wp && ids_[i] <= ids_[i - 1])
      throw input_error("window: vertex ids must be ascending within class");
  }
  for (const auto& e : edges_) {
    if (e.a < 0 || e.b < 0 || e.a >= total || e.b >= total)
      throw input_error("window: edge endpoint out of range");
    if (!in_window(e.a))
      throw input_error("window: edge does not touch the window");
    if (in_window(e.b) && e.a > e.b)
      throw input_error("window: internal edges must be stored once, a <= b");
    if (!(e.w > 0.0)) throw input_error("window: nonpositive edge weight");
    if (kinds_[e.a] == VertexKind::Boundary &&
        kinds_[e.b] == VertexKind::Boundary)
      throw input_error("window: boundary-boundary edge survived pruning");
    if (e.a == e.b && kinds_[e.a] != VertexKind::Interior)
      throw input_error("window: self-loop outside the interior");
  }
  for (int i : interior_) {
    if (!(measures_[i] > 0.0))
      throw input_error("window: interior vertex with zero measure");
    bool has_real_edge = false;
    for (auto [j, w] : neighbors(i)) {
      (void)w;
      if (j != i) has_real_edge = true;
    }
    if (!has_real_edge)
      throw input_error("window: isolated interior vertex");
  }
  for (int i : boundary_)
    if (!(measures_[i] > 0.0))
      throw input_error("window: boundary vertex with zero measure");
}

int Window::find(int64_t global_id) const {
  auto it = locate_.find(global_id);
  return it == locate_.end() ? -1 : it->second;
}

std::vector<double> Window::boundary_measures() const {
  std::vector<double> d;
  d.reserve(boundary_.size());
  for (int i : boundary_) d.push_back(measures_[i]);
  return d;
}

double relative_edge_boundary(const Window& win,
                              const std::vector<char>& membership) {
  double cut = 0.0;
  for (const auto& e : win.edges()) {
    if (e.a == e.b) continue;  // loops never cross
    const bool ina = membership[e.a] != 0;
    const bool inb = win.in_window(e.b) && membership[e.b] != 0;
    if (ina != inb) cut += e.w;
  }
  return cut;
}

double subset_measure(const Window& win, const std::vector<char>& membership) {
  double m = 0.0;
  for (int i = 0; i < win.window_size(); ++i)
    if (membership[i]) m += win.measure(i);
  return m;
}

double subset_boundary_measure(const Window& win,
                               const std::vector<char>& membership) {
  double m = 0.0;
  for (int i : win.boundary())
    if (membership[i]) m += win.measure(i);
  return m;
}

}  // namespace steklov
