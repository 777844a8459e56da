#include "steklov/exhaustion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>
#include <unordered_map>

#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/harmonic.hpp"

namespace steklov {

double GraphFamily::measure(int64_t v) const {
  double d = 0.0;
  for (const auto& [y, w] : neighbors(v)) {
    (void)y;
    d += w;
  }
  return d;
}

namespace {

class HalfLineFamily final : public GraphFamily {
 public:
  std::string name() const override { return "half-line"; }
  std::vector<int64_t> boundary() const override { return {0}; }
  bool is_interior(int64_t v) const override { return v >= 1; }
  std::vector<std::pair<int64_t, double>> neighbors(int64_t v) const override {
    if (v == 0) return {{1, 1.0}};
    return {{v - 1, 1.0}, {v + 1, 1.0}};
  }
};

// Heap labels for the branch: 0 is the boundary root with the single child 1;
// an interior vertex v has a = branching-1 children a(v-1)+2 ... a(v-1)+a+1
// and parent (v-2)/a + 1 (parent(1) = 0).
class RegularTreeFamily final : public GraphFamily {
 public:
  explicit RegularTreeFamily(int branching) : a_(branching - 1) {
    if (branching < 2)
      throw input_error("regular tree: branching must be at least 2");
  }
  std::string name() const override {
    return "tree-" + std::to_string(a_ + 1);
  }
  std::vector<int64_t> boundary() const override { return {0}; }
  bool is_interior(int64_t v) const override { return v >= 1; }
  std::vector<std::pair<int64_t, double>> neighbors(int64_t v) const override {
    if (v == 0) return {{1, 1.0}};
    std::vector<std::pair<int64_t, double>> out;
    out.reserve(a_ + 1);
    out.emplace_back(v == 1 ? 0 : (v - 2) / a_ + 1, 1.0);
    const int64_t first = a_ * (v - 1) + 2;
    for (int64_t c = first; c < first + a_; ++c) out.emplace_back(c, 1.0);
    return out;
  }

 private:
  int64_t a_;
};

class WeightedBinaryTreeFamily final : public GraphFamily {
 public:
  explicit WeightedBinaryTreeFamily(double ratio) : q_(ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio))
      throw input_error("weighted tree: ratio must be positive");
  }
  std::string name() const override { return "weighted-binary-tree"; }
  std::vector<int64_t> boundary() const override { return {0}; }
  bool is_interior(int64_t v) const override { return v >= 1; }
  std::vector<std::pair<int64_t, double>> neighbors(int64_t v) const override {
    const int level = std::bit_width(static_cast<uint64_t>(v) + 1) - 1;
    std::vector<std::pair<int64_t, double>> out;
    out.reserve(3);
    if (v >= 1) out.emplace_back((v - 1) / 2, std::pow(q_, level));
    const double wc = std::pow(q_, level + 1);
    out.emplace_back(2 * v + 1, wc);
    out.emplace_back(2 * v + 2, wc);
    return out;
  }

 private:
  double q_;
};

class FiniteFamily final : public GraphFamily {
 public:
  FiniteFamily(Domain domain, std::string name)
      : dom_(std::move(domain)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  std::vector<int64_t> boundary() const override {
    std::vector<int64_t> out;
    for (int v = 0; v < dom_.host().vertex_count(); ++v)
      if (dom_.role(v) == Role::Boundary) out.push_back(v);
    return out;
  }
  bool is_interior(int64_t v) const override {
    return dom_.role(static_cast<int>(v)) == Role::Interior;
  }
  std::vector<std::pair<int64_t, double>> neighbors(int64_t v) const override {
    std::vector<std::pair<int64_t, double>> out;
    for (const auto& [y, w] : dom_.pruned_neighbors(static_cast<int>(v)))
      out.emplace_back(y, w);
    return out;
  }

 private:
  Domain dom_;
  std::string name_;
};

}  // namespace

std::unique_ptr<GraphFamily> half_line_family() {
  return std::make_unique<HalfLineFamily>();
}
std::unique_ptr<GraphFamily> regular_tree_family(int branching) {
  return std::make_unique<RegularTreeFamily>(branching);
}
std::unique_ptr<GraphFamily> weighted_binary_tree_family(double ratio) {
  return std::make_unique<WeightedBinaryTreeFamily>(ratio);
}
std::unique_ptr<GraphFamily> finite_family(Domain domain, std::string name) {
  return std::make_unique<FiniteFamily>(std::move(domain), std::move(name));
}

Window ball_window(const GraphFamily& family, int radius,
                   int64_t vertex_budget) {
  if (radius < 0) throw input_error("ball window: negative radius");
  const std::vector<int64_t> seeds = family.boundary();
  if (seeds.empty()) throw input_error("ball window: empty boundary");

  std::unordered_map<int64_t, int> dist;
  std::queue<int64_t> frontier;
  for (int64_t z : seeds) {
    if (dist.emplace(z, 0).second) frontier.push(z);
  }
  while (!frontier.empty()) {
    const int64_t v = frontier.front();
    frontier.pop();
    const int dv = dist.at(v);
    for (const auto& [y, w] : family.neighbors(v)) {
      (void)w;
      if (dist.count(y)) continue;
      if (static_cast<int64_t>(dist.size()) + 1 > vertex_budget)
        throw budget_error("ball window: radius " + std::to_string(radius) +
                           " exceeds the vertex budget");
      dist.emplace(y, dv + 1);
      if (dv + 1 <= radius) frontier.push(y);
    }
  }

  std::vector<int64_t> w_ids, c_ids;
  w_ids.reserve(dist.size());
  for (const auto& [v, dv] : dist) (dv <= radius ? w_ids : c_ids).push_back(v);
  std::sort(w_ids.begin(), w_ids.end());
  std::sort(c_ids.begin(), c_ids.end());
  const int n_w = static_cast<int>(w_ids.size());

  std::unordered_map<int64_t, int> local;
  local.reserve(dist.size());
  for (int i = 0; i < n_w; ++i) local.emplace(w_ids[i], i);
  for (size_t i = 0; i < c_ids.size(); ++i)
    local.emplace(c_ids[i], n_w + static_cast<int>(i));

  std::vector<int64_t> ids = w_ids;
  ids.insert(ids.end(), c_ids.begin(), c_ids.end());
  std::vector<VertexKind> kinds(ids.size(), VertexKind::Collar);
  std::vector<double> measures(ids.size(), 0.0);
  for (int i = 0; i < n_w; ++i) {
    kinds[i] = family.is_interior(w_ids[i]) ? VertexKind::Interior
                                            : VertexKind::Boundary;
    measures[i] = family.measure(w_ids[i]);
  }

  std::vector<WindowEdge> edges;
  for (int i = 0; i < n_w; ++i) {
    for (const auto& [y, w] : family.neighbors(w_ids[i])) {
      const int ly = local.at(y);
      if (ly < n_w) {
        if (ly >= i) edges.push_back({i, ly, w});
      } else {
        edges.push_back({i, ly, w});
        measures[ly] += w;
      }
    }
  }
  return Window(std::move(ids), std::move(kinds), std::move(measures),
                std::move(edges));
}

namespace {

ExhaustResult run_rows(const GraphFamily& family, std::string quantity,
                       const ExhaustOptions& opt, bool monotone,
                       const std::function<double(const Window&)>& eval) {
  if (opt.first_radius < 0 || opt.radius_step < 1 || opt.max_steps < 1)
    throw input_error("exhaust: invalid radius schedule");
  ExhaustResult res;
  res.quantity = std::move(quantity);
  double prev = 0.0;
  int64_t prev_window = -1;
  for (int s = 0; s < opt.max_steps; ++s) {
    const int radius = opt.first_radius + s * opt.radius_step;
    double value;
    int64_t size;
    try {
      const Window w = ball_window(family, radius, opt.vertex_budget);
      size = w.total_size();
      // Compare window sizes, not closed-ball sizes: one step before
      // saturation the collar folds into the window without growing the
      // closure, and that last window (empty collar) still has to be
      // evaluated before the value is exact.
      if (w.window_size() == prev_window) {
        res.converged = true;
        res.stop_reason = "stabilized";
        res.estimate = prev;
        res.error_bar = 0.0;
        return res;
      }
      value = eval(w);
      prev_window = w.window_size();
    } catch (const budget_error&) {
      if (res.rows.empty()) throw;
      res.stop_reason = "budget";
      res.estimate = prev;
      res.error_bar = res.rows.back().gap;
      return res;
    }
    const double gap = res.rows.empty() ? 0.0 : std::fabs(value - prev);
    if (monotone && !res.rows.empty() &&
        value > prev + 1e-12 * std::max(1.0, std::fabs(prev)))
      throw convergence_error("exhaust: sequence failed to decrease",
                              value - prev);
    res.rows.push_back({radius, size, value, gap});
    if (res.rows.size() > 1 && gap <= opt.tolerance) {
      res.converged = true;
      res.stop_reason = "tolerance";
      res.estimate = value;
      res.error_bar = gap;
      return res;
    }
    prev = value;
  }
  res.stop_reason = "radius-cap";
  res.estimate = prev;
  res.error_bar = res.rows.size() > 1 ? res.rows.back().gap : 0.0;
  return res;
}

}  // namespace

ExhaustResult exhaust_spectrum(const GraphFamily& family, int k,
                               const ExhaustOptions& opt) {
  if (k < 1) throw input_error("exhaust: k must be positive");
  if (k > static_cast<int>(family.boundary().size()))
    throw input_error("exhaust: k exceeds the boundary size");
  return run_rows(family, "sigma" + std::to_string(k), opt, true,
                  [k](const Window& w) { return dtn_spectrum(w)[k - 1]; });
}

ExhaustResult exhaust_cheeger(const GraphFamily& family, bool jammes,
                              const ExhaustOptions& opt) {
  // A subset of W_i keeps its full incident edge set inside any larger
  // window, so both ratios are non-increasing along the exhaustion.
  return run_rows(family, jammes ? "jammes" : "classic", opt, true,
                  [jammes](const Window& w) {
                    const CheegerResult c = cheeger_constants(w);
                    return jammes ? c.jammes : c.classic;
                  });
}

ExhaustResult exhaust_higher(const GraphFamily& family, int k, bool jammes,
                             const ExhaustOptions& opt) {
  if (k < 1) throw input_error("exhaust: k must be positive");
  if (k > static_cast<int>(family.boundary().size()))
    throw input_error("exhaust: k exceeds the boundary size");
  bool used_heuristic = false;
  const std::string quantity =
      (jammes ? "jammes" : "product") + std::to_string(k);
  ExhaustResult res = run_rows(
      family, quantity, opt, !opt.allow_heuristic,
      [&used_heuristic, k, jammes, &opt](const Window& w) {
        const HigherOrderResult ho =
            higher_order_constants(w, k, opt.allow_heuristic);
        used_heuristic = used_heuristic || ho.heuristic;
        return jammes ? ho.jammes_k : ho.product_k;
      });
  res.heuristic = used_heuristic;
  return res;
}

HigherExhaust exhaust_higher_table(const GraphFamily& family, int k,
                                   const ExhaustOptions& opt) {
  if (k < 1) throw input_error("exhaust: k must be positive");
  if (k > static_cast<int>(family.boundary().size()))
    throw input_error("exhaust: k exceeds the boundary size");
  HigherExhaust res;
  const double slack = 1e-12;
  int64_t prev_window = -1;
  for (int s = 0; s < opt.max_steps; ++s) {
    const int radius = opt.first_radius + s * opt.radius_step;
    try {
      const Window w = ball_window(family, radius, opt.vertex_budget);
      if (w.window_size() == prev_window) {
        res.stop_reason = "stabilized";
        break;
      }
      prev_window = w.window_size();
      const HigherOrderResult ho =
          higher_order_constants(w, k, opt.allow_heuristic);
      res.heuristic = res.heuristic || ho.heuristic;
      const std::vector<double> sigma = dtn_spectrum(w);
      const double sk = sigma[k - 1];
      // σ_k ≤ h_J^k can fail when parts of the minimizing tuple touch;
      // only the factor-two form holds for every tuple, so that is the
      // sanity bound enforced here.  The table keeps both columns.
      if (!ho.heuristic && ho.jammes_k < kInf &&
          sk > 2.0 * ho.jammes_k + 1e-10)
        throw convergence_error("exhaust: sigma_k exceeded twice jammes_k",
                                sk - 2.0 * ho.jammes_k);
      if (!res.rows.empty() && !res.heuristic) {
        const HigherRow& p = res.rows.back();
        if (ho.product_k > p.h_k + slack || ho.jammes_k > p.h_j_k + slack ||
            sk > p.sigma_k + slack)
          throw convergence_error("exhaust: higher-order row increased", 0.0);
      }
      res.rows.push_back({radius, w.total_size(), ho.product_k, ho.jammes_k,
                          sk});
      if (ho.product_k > 0.0 && ho.product_k < kInf)
        res.c_hat = std::min(res.c_hat,
                             sk * std::pow(static_cast<double>(k), 6) /
                                 ho.product_k);
      if (res.rows.size() > 1) {
        const HigherRow& p = res.rows[res.rows.size() - 2];
        const HigherRow& q = res.rows.back();
        if (std::fabs(q.sigma_k - p.sigma_k) <= opt.tolerance &&
            std::fabs(q.h_j_k - p.h_j_k) <= opt.tolerance &&
            std::fabs(q.h_k - p.h_k) <= opt.tolerance) {
          res.stop_reason = "tolerance";
          break;
        }
      }
    } catch (const budget_error&) {
      if (res.rows.empty()) throw;
      res.stop_reason = "budget";
      break;
    }
  }
  if (res.stop_reason.empty()) res.stop_reason = "radius-cap";
  return res;
}

ExhaustResult exhaust_lambda(const GraphFamily& family, int k,
                             const ExhaustOptions& opt) {
  if (k < 1) throw input_error("exhaust: k must be positive");
  return run_rows(family, "lambda" + std::to_string(k), opt, true,
                  [k](const Window& w) {
                    if (w.window_size() < k)
                      throw input_error(
                          "exhaust: k exceeds the window size; raise the "
                          "first radius");
                    if (w.window_size() <= 600)
                      return dirichlet_laplacian_spectrum(w)[k - 1];
                    if (k == 1) {
                      std::vector<int> all(w.window_size());
                      for (int i = 0; i < w.window_size(); ++i) all[i] = i;
                      return first_dirichlet_eigenvalue(w, all);
                    }
                    throw budget_error(
                        "exhaust: dense spectra stop at 600 vertices; only "
                        "k = 1 is available beyond");
                  });
}

ExhaustResult exhaust_capacity(const GraphFamily& family,
                               const ExhaustOptions& opt) {
  return run_rows(family, "capacity", opt, true, [](const Window& w) {
    const std::vector<double> ones(w.boundary_size(), 1.0);
    return capacity(w, ones);
  });
}

RecurrenceResult recurrence_test(const GraphFamily& family,
                                 const ExhaustOptions& opt) {
  if (opt.first_radius < 0 || opt.radius_step < 1 || opt.max_steps < 1)
    throw input_error("recurrence: invalid radius schedule");
  RecurrenceResult res;
  int radius = opt.first_radius;
  int step = opt.radius_step;
  double prev_cap = 0.0;
  int64_t prev_size = -1;
  int64_t prev_window = -1;
  bool have_prev = false;

  for (int s = 0; s < opt.max_steps && res.verdict.empty(); ++s) {
    try {
      const Window w = ball_window(family, radius, opt.vertex_budget);
      const int64_t size = w.total_size();
      if (w.window_size() == prev_window) {
        // Saturated window (empty collar already evaluated): the previous
        // capacity is the exact limit.
        res.verdict = prev_cap <= opt.tolerance ? "recurrent" : "transient";
        res.stop_reason = "stabilized";
        break;
      }
      prev_window = w.window_size();
      const std::vector<double> ones(w.boundary_size(), 1.0);
      const double cap = capacity(w, ones);
      if (have_prev && cap > prev_cap + 1e-12 * std::max(1.0, prev_cap))
        throw convergence_error("recurrence: capacity failed to decrease",
                                cap - prev_cap);
      res.rows.push_back({radius, size, cap});
      if (cap <= opt.tolerance) {
        res.verdict = "recurrent";
        res.stop_reason = "tolerance";
        break;
      }
      if (have_prev && prev_cap - cap <= opt.tolerance * prev_cap &&
          cap > 10.0 * opt.tolerance) {
        res.verdict = "transient";
        res.stop_reason = "plateau";
        break;
      }
      if (have_prev && static_cast<double>(size) < 1.5 * prev_size) step *= 2;
      prev_cap = cap;
      prev_size = size;
      have_prev = true;
      radius += step;
    } catch (const budget_error&) {
      if (res.rows.empty()) throw;
      res.verdict = "inconclusive";
      res.stop_reason = "budget";
      break;
    }
  }
  if (res.verdict.empty()) {
    res.verdict = "inconclusive";
    res.stop_reason = "row-cap";
  }
  res.final_capacity = res.rows.empty() ? prev_cap : res.rows.back().capacity;
  return res;
}

}  // namespace steklov
