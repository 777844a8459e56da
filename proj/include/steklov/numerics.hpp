#pragma once

#include <span>
#include <vector>

#include "steklov/errors.hpp"

namespace steklov {

// Dense symmetric matrix, single (lower) triangle stored.
class SymMatrix {
 public:
  explicit SymMatrix(int n) : n_(n), tri_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {}

  int size() const { return n_; }
  double at(int i, int j) const { return tri_[index(i, j)]; }
  void set(int i, int j, double v) { tri_[index(i, j)] = v; }
  void add(int i, int j, double v) { tri_[index(i, j)] += v; }

  double trace() const;
  double frobenius() const;
  std::vector<double> full() const;  // row-major n*n expansion

 private:
  size_t index(int i, int j) const {
    if (i < j) std::swap(i, j);
    return static_cast<size_t>(i) * (i + 1) / 2 + j;
  }
  int n_;
  std::vector<double> tri_;
};

// Cholesky factorization A = L L^T for reuse across right-hand sides.
// Throws convergence_error (carrying the offending pivot) if A is not
// numerically positive definite.
class Cholesky {
 public:
  explicit Cholesky(const SymMatrix& a);
  int size() const { return n_; }
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  int n_;
  std::vector<double> l_;  // row-major lower triangle, full square storage
};

std::vector<double> solve_spd(const SymMatrix& a, std::span<const double> rhs);

// Max-norm of A x - b.
double spd_residual(const SymMatrix& a, std::span<const double> x,
                    std::span<const double> rhs);

struct EigenResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
  int sweeps = 0;
  double off_residual = 0.0;  // off-diagonal Frobenius norm at termination
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// 1e-12 * ||A||_F; throws convergence_error after 100 sweeps.  Vectors are
// orthonormal; ties in eigenvalues keep the diagonal order.
EigenResult eigh(const SymMatrix& a);

// Generalized problem A u = lambda M u with diagonal M > 0, reduced by the
// M^{-1/2} congruence.  Vectors are M-orthonormal.
EigenResult eigh_generalized(const SymMatrix& a, std::span<const double> m);

}  // namespace steklov
