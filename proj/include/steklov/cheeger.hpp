#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "steklov/graph.hpp"

namespace steklov {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class CutMethod { Enumeration, ParametricCut, Auto };

// Both isoperimetric ratios of a window, minimized over nonempty A ⊆ W:
//   jammes = μ(∂A) / d(A∩δΩ)   (+inf when no competitor meets the boundary),
//   classic = μ(∂A) / d(A).
// Witnesses are window-local vertex indices, ascending.
struct CheegerResult {
  double jammes = kInf;
  double classic = kInf;
  std::vector<int> witness_jammes;
  std::vector<int> witness_classic;
  std::string method;
};

CheegerResult cheeger_constants(const Window& w,
                                CutMethod method = CutMethod::Auto,
                                int enumeration_cap = 22);

// Single-ratio minimization over nonempty subsets of `universe` (window
// locals).  Cut weight counts every edge leaving the subset, including edges
// into W \ universe and into the collar.
struct RatioResult {
  double value = kInf;
  std::vector<int> witness;
};
RatioResult min_ratio_enumeration(const Window& w,
                                  const std::vector<int>& universe,
                                  bool jammes);
RatioResult min_ratio_parametric_cut(const Window& w,
                                     const std::vector<int>& universe,
                                     bool jammes);

// Higher-order constants over disjoint k-tuples of nonempty subsets:
//   jammes_k = min max_l μ(∂A_l)/d(A_l∩δΩ),
//   product_k = min max_l h_J(A_l)·h(A_l).
struct HigherOrderResult {
  int k = 0;
  double jammes_k = kInf;
  double product_k = kInf;
  std::vector<std::vector<int>> witness_jammes;   // window locals per part
  std::vector<std::vector<int>> witness_product;
  bool heuristic = false;  // true: upper bounds from eigenvector supports
};
HigherOrderResult higher_order_constants(const Window& w, int k,
                                         bool allow_heuristic = false,
                                         double budget = 1e7);

// Smallest eigenvalue of the Dirichlet pencil restricted to a support set
// (functions vanish outside), masses nu over the support (domain measure d
// when empty).
double first_dirichlet_eigenvalue(const Window& w,
                                  const std::vector<int>& support,
                                  const std::vector<double>& nu = {});

// Γ_k: min over disjoint k-tuples of max_l λ_{1,D}(A_l).
struct GammaResult {
  double value = kInf;
  std::vector<std::vector<int>> witness;
};
GammaResult gamma_k(const Window& w, int k, double budget = 1e7);

// Exact layer-cake identities for f ≥ 0 on the closed window, f = 0 on the
// collar, with level sets S_t = {x ∈ W : f(x)^2 ≥ t}:
//   ∫ μ(∂_W S_t) dt = Σ_{E(W,W̄)} μ |f²(x) - f²(y)|,
//   ∫ d(S_t) dt = Σ_W f² d,   ∫ d(S_t∩δΩ) dt = Σ_{W∩δΩ} f² d.
struct CoareaReport {
  double perimeter_integral, perimeter_sum;
  double mass_integral, mass_sum;
  double boundary_mass_integral, boundary_mass_sum;
};
CoareaReport coarea_check(const Window& w, std::span<const double> f);

// Named inequality checks for one window: the order-one sandwich, the
// comparison of the two ratios, and the higher-order upper bounds up to
// k_max, with the empirical constants of the lower bounds reported.
struct CheckRecord {
  std::string name;
  double lhs, rhs, slack;
  bool pass;
};
struct InequalityReport {
  std::vector<CheckRecord> checks;
  std::vector<double> sigma;
  double classic = kInf, jammes = kInf;
  std::vector<double> c_hat_sigma;   // σ_k k^6 / h_k for 2 <= k <= k_max
  std::vector<double> c_hat_lambda;  // λ_k k^6 / Γ_k
  bool all_pass = true;
};
InequalityReport verify_inequalities(const Window& w, int k_max);

}  // namespace steklov
