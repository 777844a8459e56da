#include "steklov/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace steklov {

MaxFlow::MaxFlow(int n) : n_(n), arcs_(n) {}

void MaxFlow::add_edge(int u, int v, double cap_uv, double cap_vu) {
  arcs_[u].push_back({v, arcs_[v].size(), cap_uv});
  arcs_[v].push_back({u, arcs_[u].size() - 1, cap_vu});
  cap_scale_ = std::max(cap_scale_, std::max(cap_uv, cap_vu));
}

void MaxFlow::push(int u, Arc& a) {
  const double delta = std::min(excess_[u], a.cap);
  a.cap -= delta;
  arcs_[a.to][a.rev].cap += delta;
  excess_[u] -= delta;
  excess_[a.to] += delta;
}

void MaxFlow::relabel(int u) {
  int best = 2 * n_;
  for (const Arc& a : arcs_[u])
    if (a.cap > 0.0) best = std::min(best, height_[a.to] + 1);
  --count_[height_[u]];
  const int old = height_[u];
  height_[u] = best;
  if (best < 2 * n_) ++count_[best];
  ptr_[u] = 0;
  if (count_[old] == 0 && old < n_) gap(old);
}

void MaxFlow::gap(int missing_height) {
  for (int v = 0; v < n_; ++v)
    if (height_[v] > missing_height && height_[v] < n_) {
      --count_[height_[v]];
      height_[v] = n_ + 1;
    }
}

double MaxFlow::solve(int s, int t) {
  excess_.assign(n_, 0.0);
  height_.assign(n_, 0);
  ptr_.assign(n_, 0);
  count_.assign(2 * n_ + 1, 0);
  bucket_.assign(2 * n_ + 1, {});
  height_[s] = n_;
  count_[0] = n_ - 1;
  count_[n_] = 1;

  for (Arc& a : arcs_[s]) {
    if (a.cap <= 0.0) continue;
    excess_[s] += a.cap;
    push(s, a);
    if (a.to != t && a.to != s && excess_[a.to] > 0.0)
      bucket_[height_[a.to]].push_back(a.to);
  }
  highest_ = 0;

  while (highest_ >= 0) {
    if (bucket_[highest_].empty()) {
      --highest_;
      continue;
    }
    const int u = bucket_[highest_].back();
    bucket_[highest_].pop_back();
    if (u == s || u == t || excess_[u] <= 0.0 || height_[u] != highest_)
      continue;

    while (excess_[u] > 0.0) {
      if (ptr_[u] == arcs_[u].size()) {
        relabel(u);
        if (height_[u] >= 2 * n_) break;  // unreachable from t, excess stays
        break;
      }
      Arc& a = arcs_[u][ptr_[u]];
      if (a.cap > 0.0 && height_[u] == height_[a.to] + 1) {
        const bool was_inactive = excess_[a.to] <= 0.0;
        push(u, a);
        if (was_inactive && a.to != s && a.to != t && excess_[a.to] > 0.0)
          bucket_[height_[a.to]].push_back(a.to);
      } else {
        ++ptr_[u];
      }
    }
    if (excess_[u] > 0.0 && height_[u] < 2 * n_) {
      bucket_[height_[u]].push_back(u);
      highest_ = std::max(highest_, height_[u]);
    }
  }
  return excess_[t];
}

std::vector<char> MaxFlow::source_side(int s) const {
  const double eps = 1e-12 * std::max(1.0, cap_scale_);
  std::vector<char> seen(n_, 0);
  std::deque<int> queue{s};
  seen[s] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const Arc& a : arcs_[u])
      if (!seen[a.to] && a.cap > eps) {
        seen[a.to] = 1;
        queue.push_back(a.to);
      }
  }
  return seen;
}

}  // namespace steklov
