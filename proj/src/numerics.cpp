#include "steklov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace steklov {

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

double SymMatrix::frobenius() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    s += at(i, i) * at(i, i);
    for (int j = 0; j < i; ++j) s += 2.0 * at(i, j) * at(i, j);
  }
  return std::sqrt(s);
}

std::vector<double> SymMatrix::full() const {
  std::vector<double> a(static_cast<size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) a[static_cast<size_t>(i) * n_ + j] = at(i, j);
  return a;
}

Cholesky::Cholesky(const SymMatrix& a) : n_(a.size()) {
  l_.assign(static_cast<size_t>(n_) * n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    double diag = a.at(j, j);
    for (int k = 0; k < j; ++k) diag -= l_[j * n_ + k] * l_[j * n_ + k];
    if (!(diag > 0.0))
      throw convergence_error("cholesky: nonpositive pivot at row " +
                                  std::to_string(j),
                              diag);
    const double ljj = std::sqrt(diag);
    l_[j * n_ + j] = ljj;
    for (int i = j + 1; i < n_; ++i) {
      double v = a.at(i, j);
      for (int k = 0; k < j; ++k) v -= l_[i * n_ + k] * l_[j * n_ + k];
      l_[i * n_ + j] = v / ljj;
    }
  }
}

std::vector<double> Cholesky::solve(std::span<const double> rhs) const {
  std::vector<double> y(rhs.begin(), rhs.end());
  for (int i = 0; i < n_; ++i) {
    double v = y[i];
    for (int k = 0; k < i; ++k) v -= l_[i * n_ + k] * y[k];
    y[i] = v / l_[i * n_ + i];
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double v = y[i];
    for (int k = i + 1; k < n_; ++k) v -= l_[k * n_ + i] * y[k];
    y[i] = v / l_[i * n_ + i];
  }
  return y;
}

std::vector<double> solve_spd(const SymMatrix& a, std::span<const double> rhs) {
  return Cholesky(a).solve(rhs);
}

double spd_residual(const SymMatrix& a, std::span<const double> x,
                    std::span<const double> rhs) {
  const int n = a.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = -rhs[i];
    for (int j = 0; j < n; ++j) v += a.at(i, j) * x[j];
    worst = std::max(worst, std::fabs(v));
  }
  return worst;
}

namespace {

double off_frobenius(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenResult eigh(const SymMatrix& a0) {
  const int n = a0.size();
  EigenResult res;
  if (n == 0) return res;

  std::vector<double> a = a0.full();
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double norm = a0.frobenius();
  const double tol = 1e-12 * norm;
  constexpr int kMaxSweeps = 100;

  double off = off_frobenius(a, n);
  int sweep = 0;
  while (off > tol && sweep < kMaxSweeps) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r * n + p];
          const double arq = a[r * n + q];
          a[r * n + p] = a[p * n + r] = c * arp - s * arq;
          a[r * n + q] = a[q * n + r] = s * arp + c * arq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (int r = 0; r < n; ++r) {
          const double vrp = v[r * n + p];
          const double vrq = v[r * n + q];
          v[r * n + p] = c * vrp - s * vrq;
          v[r * n + q] = s * vrp + c * vrq;
        }
      }
    }
    ++sweep;
    off = off_frobenius(a, n);
  }
  if (off > tol)
    throw convergence_error("jacobi: no convergence within 100 sweeps", off);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[x * n + x] < a[y * n + y];
  });

  res.values.reserve(n);
  res.vectors.reserve(n);
  for (int k : order) {
    res.values.push_back(a[k * n + k]);
    std::vector<double> col(n);
    int peak = 0;
    for (int i = 0; i < n; ++i) {
      col[i] = v[i * n + k];
      if (std::fabs(col[i]) > std::fabs(col[peak])) peak = i;
    }
    if (col[peak] < 0.0)
      for (double& x : col) x = -x;
    res.vectors.push_back(std::move(col));
  }
  res.sweeps = sweep;
  res.off_residual = off;
  return res;
}

EigenResult eigh_generalized(const SymMatrix& a, std::span<const double> m) {
  const int n = a.size();
  if (static_cast<int>(m.size()) != n)
    throw input_error("eigh_generalized: mass vector size mismatch");
  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) {
    if (!(m[i] > 0.0) || std::isinf(m[i]))
      throw input_error("eigh_generalized: masses must be positive and finite");
    inv_sqrt[i] = 1.0 / std::sqrt(m[i]);
  }
  SymMatrix b(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j)
      b.set(i, j, a.at(i, j) * inv_sqrt[i] * inv_sqrt[j]);
  EigenResult res = eigh(b);
  for (auto& vec : res.vectors)
    for (int i = 0; i < n; ++i) vec[i] *= inv_sqrt[i];
  return res;
}

}  // namespace steklov
