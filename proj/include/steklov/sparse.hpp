#pragma once

#include <span>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

struct Triplet {
  int i, j;
  double v;
};

// Symmetric sparse matrix in CSR form, both triangles materialized for fast
// products.  Triplets are given for one triangle (i <= j or i >= j, mixed is
// fine); duplicates are summed.
class SparseSym {
 public:
  static SparseSym from_triplets(int n, std::vector<Triplet> entries);

  int size() const { return n_; }
  std::span<const std::pair<int, double>> row(int i) const {
    return {entries_.data() + off_[i], entries_.data() + off_[i + 1]};
  }
  double diag(int i) const { return diag_[i]; }
  void apply(std::span<const double> x, std::span<double> y) const;

 private:
  int n_ = 0;
  std::vector<size_t> off_;
  std::vector<std::pair<int, double>> entries_;
  std::vector<double> diag_;
};

// Exact O(n) LDL^T elimination for SPD matrices whose off-diagonal structure
// is a forest (every tree-shaped interior system: paths, regular trees).
// ok() is false when the structure has a cycle; callers then fall back to CG.
class ForestSolver {
 public:
  explicit ForestSolver(const SparseSym& a);
  bool ok() const { return ok_; }
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  struct Step {
    int v;
    int parent;  // -1 for component roots
    double coupling;
  };
  int n_ = 0;
  bool ok_ = false;
  std::vector<Step> steps_;    // elimination order
  std::vector<double> pivot_;  // diagonal at elimination time
};

// Jacobi-preconditioned conjugate gradients; terminates when the residual
// 2-norm falls below rtol * ||b||.  Throws convergence_error at the
// iteration cap.
std::vector<double> cg_solve(const SparseSym& a, std::span<const double> b,
                             double rtol, int max_iterations);

// Smallest eigenvalue of the pencil (L, diag(m)) by inverse iteration with a
// Rayleigh-quotient stop.  L must be SPD (windows with a nonempty collar).
double smallest_generalized_eigenvalue(const SparseSym& l,
                                       std::span<const double> m);

}  // namespace steklov
