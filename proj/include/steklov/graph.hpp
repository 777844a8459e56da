#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

// Finite host graph with symmetric nonnegative edge weights.  Vertices are
// contiguous ids 0..n-1; name<->id translation lives in the io layer.
// Self-loops are allowed; zero-weight edges are dropped at construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, const std::vector<std::tuple<int, int, double>>& edges);

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  std::span<const std::pair<int, double>> neighbors(int x) const {
    return {adj_[x].data(), adj_[x].size()};
  }
  int edge_count() const { return edge_count_; }

 private:
  std::vector<std::vector<std::pair<int, double>>> adj_;  // sorted by neighbor
  int edge_count_ = 0;
};

enum class Role : uint8_t { Interior, Boundary, Outside };

// A host graph together with a distinguished interior vertex set.  The
// boundary is always recomputed as the set of non-interior vertices adjacent
// to the interior; everything else is outside and dropped.  Edges joining two
// boundary vertices (and edges touching outside vertices) are pruned, and the
// vertex measure is taken on the pruned view:
//   d(x) = sum of incident weights            for interior x,
//   d(z) = sum of weights into the interior   for boundary z.
class Domain {
 public:
  Domain(WeightedGraph host, const std::vector<int>& interior);

  const WeightedGraph& host() const { return host_; }
  Role role(int x) const { return roles_[x]; }
  double measure(int x) const { return d_[x]; }
  // Vertices of the closed domain (interior + boundary), ascending.
  const std::vector<int>& closure() const { return omega_bar_; }
  int interior_count() const { return n_interior_; }
  int boundary_count() const { return n_boundary_; }
  int outside_count() const { return n_outside_; }

  // Neighbors surviving the pruning (edges with at least one interior
  // endpoint, both endpoints in the closure).
  std::span<const std::pair<int, double>> pruned_neighbors(int x) const {
    return {pruned_[x].data(), pruned_[x].size()};
  }

  class Window make_window(std::vector<int> vertices) const;
  class Window window_all() const;

 private:
  WeightedGraph host_;
  std::vector<Role> roles_;
  std::vector<double> d_;
  std::vector<std::vector<std::pair<int, double>>> pruned_;
  std::vector<int> omega_bar_;
  int n_interior_ = 0, n_boundary_ = 0, n_outside_ = 0;
};

// Vertex classes inside a window: Interior = W∩Ω, Boundary = W∩δΩ,
// Collar = δW (the one-step vertex neighborhood of W, carrying homogeneous
// Dirichlet data in every solve).
enum class VertexKind : uint8_t { Interior, Boundary, Collar };

struct WindowEdge {
  int a;  // local index, always a window vertex
  int b;  // local index, window or collar vertex; a <= b when both in W
  double w;
};

// A finite window W of a domain, stored self-contained so that windows cut
// from explicit files and windows grown from infinite graph families feed the
// same solvers.  Local indices: window vertices first (ascending global id),
// then collar vertices (ascending global id).  The edge list is exactly
// E(W, W ∪ δW), each undirected edge once.
class Window {
 public:
  Window(std::vector<int64_t> ids, std::vector<VertexKind> kinds,
         std::vector<double> measures, std::vector<WindowEdge> edges);

  int window_size() const { return n_window_; }          // #W
  int interior_size() const { return static_cast<int>(interior_.size()); }
  int boundary_size() const { return static_cast<int>(boundary_.size()); }
  int collar_size() const { return total_size() - n_window_; }
  int total_size() const { return static_cast<int>(ids_.size()); }

  int64_t id(int local) const { return ids_[local]; }
  VertexKind kind(int local) const { return kinds_[local]; }
  bool in_window(int local) const { return local < n_window_; }
  // Domain measure d for window vertices; for collar vertices the measure of
  // the window graph (total weight into W), used by the Green identity.
  double measure(int local) const { return measures_[local]; }

  const std::vector<int>& interior() const { return interior_; }   // locals
  const std::vector<int>& boundary() const { return boundary_; }   // locals
  const std::vector<WindowEdge>& edges() const { return edges_; }

  std::span<const std::pair<int, double>> neighbors(int local) const {
    return {nbr_.data() + off_[local], nbr_.data() + off_[local + 1]};
  }

  // Position of a local vertex inside interior()/boundary(), -1 otherwise.
  int interior_position(int local) const { return ipos_[local]; }
  int boundary_position(int local) const { return bpos_[local]; }
  int find(int64_t global_id) const;

  std::vector<double> boundary_measures() const;
  double total_edge_weight() const { return total_weight_; }

 private:
  void build_adjacency();
  void validate() const;

  std::vector<int64_t> ids_;
  std::vector<VertexKind> kinds_;
  std::vector<double> measures_;
  std::vector<WindowEdge> edges_;
  std::vector<int> interior_, boundary_;
  std::vector<int> ipos_, bpos_;
  std::vector<size_t> off_;
  std::vector<std::pair<int, double>> nbr_;
  std::unordered_map<int64_t, int> locate_;
  int n_window_ = 0;
  double total_weight_ = 0.0;
};

// Weight of the relative edge boundary of a nonempty subset of W: all edges
// of E(W, W ∪ δW) with exactly one endpoint in the subset.  Self-loops never
// cross a cut.  `membership` has one flag per window vertex (locals < #W).
double relative_edge_boundary(const Window& win,
                              const std::vector<char>& membership);

// d-mass of a subset of window vertices, and of its boundary part.
double subset_measure(const Window& win, const std::vector<char>& membership);
double subset_boundary_measure(const Window& win,
                               const std::vector<char>& membership);

}  // namespace steklov
