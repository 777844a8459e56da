#pragma once

#include <vector>

namespace steklov {

// Highest-label push-relabel max-flow with the gap heuristic, on real-valued
// capacities.  Used as the cut engine inside the parametric Cheeger solver.
class MaxFlow {
 public:
  explicit MaxFlow(int n);
  void add_edge(int u, int v, double cap_uv, double cap_vu);
  double solve(int s, int t);
  // Vertices reachable from s in the residual network (includes s); call
  // after solve().
  std::vector<char> source_side(int s) const;

 private:
  struct Arc {
    int to;
    size_t rev;
    double cap;
  };
  void push(int u, Arc& a);
  void relabel(int u);
  void gap(int missing_height);

  int n_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> excess_;
  std::vector<int> height_;
  std::vector<size_t> ptr_;
  std::vector<int> count_;
  std::vector<std::vector<int>> bucket_;
  int highest_ = 0;
  double cap_scale_ = 0.0;
};

}  // namespace steklov
