#include "steklov/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace steklov {

SparseSym SparseSym::from_triplets(int n, std::vector<Triplet> entries) {
  SparseSym s;
  s.n_ = n;
  std::vector<std::map<int, double>> rows(n);
  for (const auto& t : entries) {
    if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n)
      throw input_error("sparse: triplet index out of range");
    rows[t.i][t.j] += t.v;
    if (t.i != t.j) rows[t.j][t.i] += t.v;
  }
  s.off_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) s.off_[i + 1] = s.off_[i] + rows[i].size();
  s.entries_.reserve(s.off_[n]);
  s.diag_.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (auto [j, v] : rows[i]) {
      s.entries_.push_back({j, v});
      if (j == i) s.diag_[i] = v;
    }
  return s;
}

void SparseSym::apply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (auto [j, v] : row(i)) acc += v * x[j];
    y[i] = acc;
  }
}

ForestSolver::ForestSolver(const SparseSym& a) : n_(a.size()) {
  pivot_.assign(n_, 0.0);
  std::vector<int> deg(n_, 0);
  for (int i = 0; i < n_; ++i) {
    pivot_[i] = a.diag(i);
    for (auto [j, v] : a.row(i)) {
      (void)v;
      if (j != i) ++deg[i];
    }
  }
  std::vector<char> removed(n_, 0);
  std::vector<size_t> scan(n_, 0);
  std::vector<int> queue;
  queue.reserve(n_);
  for (int i = 0; i < n_; ++i)
    if (deg[i] <= 1) queue.push_back(i);

  steps_.reserve(n_);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const int v = queue[qi];
    if (removed[v]) continue;
    int parent = -1;
    double coupling = 0.0;
    auto row = a.row(v);
    for (size_t& k = scan[v]; k < row.size(); ++k) {
      const auto [j, w] = row[k];
      if (j != v && !removed[j]) {
        parent = j;
        coupling = w;
        ++k;
        break;
      }
    }
    if (!(pivot_[v] > 0.0)) {
      ok_ = false;
      return;
    }
    removed[v] = 1;
    steps_.push_back({v, parent, coupling});
    if (parent >= 0) {
      pivot_[parent] -= coupling * coupling / pivot_[v];
      if (--deg[parent] <= 1) queue.push_back(parent);
    }
  }
  ok_ = static_cast<int>(steps_.size()) == n_;
}

std::vector<double> ForestSolver::solve(std::span<const double> rhs) const {
  std::vector<double> y(rhs.begin(), rhs.end());
  for (const auto& s : steps_)
    if (s.parent >= 0) y[s.parent] -= s.coupling * y[s.v] / pivot_[s.v];
  std::vector<double> x(n_, 0.0);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    double v = y[it->v];
    if (it->parent >= 0) v -= it->coupling * x[it->parent];
    x[it->v] = v / pivot_[it->v];
  }
  return x;
}

std::vector<double> cg_solve(const SparseSym& a, std::span<const double> b,
                             double rtol, int max_iterations) {
  const int n = a.size();
  std::vector<double> x(n, 0.0);
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) return x;

  std::vector<double> r(b.begin(), b.end());
  std::vector<double> prec(n);
  for (int i = 0; i < n; ++i) prec[i] = a.diag(i) > 0.0 ? 1.0 / a.diag(i) : 1.0;

  std::vector<double> z(n), p(n), ap(n);
  for (int i = 0; i < n; ++i) z[i] = prec[i] * r[i];
  p = z;
  double rz = 0.0;
  for (int i = 0; i < n; ++i) rz += r[i] * z[i];

  const double target = rtol * bnorm;
  for (int it = 0; it < max_iterations; ++it) {
    a.apply(p, ap);
    double pap = 0.0;
    for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0.0))
      throw convergence_error("cg: matrix not positive definite", pap);
    const double alpha = rz / pap;
    double rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      rnorm += r[i] * r[i];
    }
    if (std::sqrt(rnorm) <= target) return x;
    double rz_next = 0.0;
    for (int i = 0; i < n; ++i) {
      z[i] = prec[i] * r[i];
      rz_next += r[i] * z[i];
    }
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  double rnorm = 0.0;
  for (double v : r) rnorm += v * v;
  throw convergence_error("cg: no convergence within iteration cap",
                          std::sqrt(rnorm) / bnorm);
}

double smallest_generalized_eigenvalue(const SparseSym& l,
                                       std::span<const double> m) {
  const int n = l.size();
  if (n == 0) throw input_error("eigen: empty system");
  ForestSolver forest(l);
  auto solve = [&](const std::vector<double>& rhs) {
    if (forest.ok()) return forest.solve(rhs);
    return cg_solve(l, rhs, 1e-13, 40 * n + 200);
  };

  std::vector<double> x(n, 1.0);
  auto m_normalize = [&](std::vector<double>& v) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += m[i] * v[i] * v[i];
    s = std::sqrt(s);
    for (double& t : v) t /= s;
  };
  m_normalize(x);

  double lambda = 0.0;
  std::vector<double> rhs(n), lx(n);
  for (int it = 0; it < 2000; ++it) {
    for (int i = 0; i < n; ++i) rhs[i] = m[i] * x[i];
    x = solve(rhs);
    m_normalize(x);
    l.apply(x, lx);
    lambda = 0.0;
    for (int i = 0; i < n; ++i) lambda += x[i] * lx[i];
    // Kato: the M^{-1}-norm of the residual bounds the distance from the
    // Rayleigh quotient to the nearest eigenvalue, so this is a certificate
    // rather than a stagnation heuristic.
    double err2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = lx[i] - lambda * m[i] * x[i];
      err2 += r * r / m[i];
    }
    if (std::sqrt(err2) <= 1e-12 * std::max(lambda, 1e-300)) return lambda;
  }
  throw convergence_error("inverse iteration: no convergence", lambda);
}

}  // namespace steklov
