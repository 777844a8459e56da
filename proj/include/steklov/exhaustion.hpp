#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "steklov/graph.hpp"

namespace steklov {

// A weighted graph with a distinguished finite boundary, presented through
// local queries so that infinite families and loaded files feed the same
// window builder.  The adjacency is the pruned view: neighbors of a boundary
// vertex are its interior neighbors only, so boundary-boundary edges never
// appear and ball growth cannot leave the closed domain.
class GraphFamily {
 public:
  virtual ~GraphFamily() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int64_t> boundary() const = 0;
  virtual bool is_interior(int64_t v) const = 0;
  virtual std::vector<std::pair<int64_t, double>> neighbors(
      int64_t v) const = 0;
  // d(v): total incident weight in the pruned view (loops count once).
  double measure(int64_t v) const;
};

// Path 0 - 1 - 2 - ... with unit weights; the boundary is {0}.
std::unique_ptr<GraphFamily> half_line_family();

// One branch of the b-regular tree hanging off the boundary root: the root
// has a single edge into the branch, every branch vertex has one parent and
// b-1 children, all weights one.  Ids are heap labels.
std::unique_ptr<GraphFamily> regular_tree_family(int branching);

// Rooted binary tree whose level-k edges carry weight ratio^k, so each level
// contributes total conductance (2*ratio)^k; the boundary is the root.
std::unique_ptr<GraphFamily> weighted_binary_tree_family(double ratio);

// Adapter over a finite explicit domain; balls saturate at its closure.
std::unique_ptr<GraphFamily> finite_family(Domain domain, std::string name);

// Ball window: every vertex within hop distance `radius` of the boundary,
// plus the collar it needs.  Throws budget_error when |W| + |collar| would
// exceed the vertex budget.
Window ball_window(const GraphFamily& family, int radius,
                   int64_t vertex_budget);

struct ExhaustOptions {
  int first_radius = 1;
  int radius_step = 1;
  int max_steps = 64;
  double tolerance = 1e-6;
  int64_t vertex_budget = 2'000'000;
  bool allow_heuristic = false;  // only consulted by exhaust_higher
};

struct ConvergenceRow {
  int radius;
  int64_t closed_size;  // |W| + |collar|
  double value;
  double gap;  // |value - previous row|, zero on the first row
};

struct ExhaustResult {
  std::string quantity;
  std::vector<ConvergenceRow> rows;
  double estimate = 0.0;
  double error_bar = 0.0;
  bool converged = false;
  std::string stop_reason;  // tolerance | stabilized | budget | radius-cap
  bool heuristic = false;
};

// Window quantities along the growing ball exhaustion.  The spectrum and
// capacity sequences are monotone nonincreasing and the drivers enforce that
// within 1e-12; the run stops when consecutive values agree within the
// tolerance, the ball stops growing, or a budget is hit.
ExhaustResult exhaust_spectrum(const GraphFamily& family, int k,
                               const ExhaustOptions& opt = {});
ExhaustResult exhaust_cheeger(const GraphFamily& family, bool jammes,
                              const ExhaustOptions& opt = {});
ExhaustResult exhaust_higher(const GraphFamily& family, int k, bool jammes,
                             const ExhaustOptions& opt = {});
ExhaustResult exhaust_lambda(const GraphFamily& family, int k,
                             const ExhaustOptions& opt = {});
ExhaustResult exhaust_capacity(const GraphFamily& family,
                               const ExhaustOptions& opt = {});

// Combined higher-order table: both constants next to sigma_k per radius,
// with the per-depth bound sigma_k <= 2*jammes_k asserted in exact mode
// and the running empirical constant c_hat = min sigma_k k^6 / h_k.
struct HigherRow {
  int radius;
  int64_t closed_size;
  double h_k, h_j_k, sigma_k;
};
struct HigherExhaust {
  std::vector<HigherRow> rows;
  double c_hat = std::numeric_limits<double>::infinity();
  std::string stop_reason;
  bool heuristic = false;
};
HigherExhaust exhaust_higher_table(const GraphFamily& family, int k,
                                   const ExhaustOptions& opt = {});

struct RecurrenceRow {
  int radius;
  int64_t closed_size;
  double capacity;
};

struct RecurrenceResult {
  std::vector<RecurrenceRow> rows;
  std::string verdict;      // recurrent | transient | inconclusive
  std::string stop_reason;  // tolerance | plateau | stabilized | budget | row-cap
  double final_capacity = 0.0;
};

// Capacity test for recurrence: c_i = Cap(1, W_i) along balls with an
// adaptive radius schedule (the step doubles while the ball grows slowly).
// The walk is recurrent exactly when c_i -> 0; a plateau strictly above the
// tolerance band is reported as transient, anything else as inconclusive.
RecurrenceResult recurrence_test(const GraphFamily& family,
                                 const ExhaustOptions& opt = {});

}  // namespace steklov
