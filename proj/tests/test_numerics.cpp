#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "steklov/numerics.hpp"

using namespace steklov;

namespace {

SymMatrix random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // A = G G^T + n I
  std::vector<std::vector<double>> g(n, std::vector<double>(n));
  for (auto& row : g)
    for (double& v : row) v = u(rng);
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = i == j ? n : 0.0;
      for (int k = 0; k < n; ++k) s += g[i][k] * g[j][k];
      a.set(i, j, s);
    }
  return a;
}

}  // namespace

TEST_CASE("sym matrix stores one triangle") {
  SymMatrix a(3);
  a.set(2, 0, 5.0);
  CHECK(a.at(0, 2) == 5.0);
  a.add(0, 2, 1.0);
  CHECK(a.at(2, 0) == 6.0);
  a.set(1, 1, 2.0);
  CHECK(a.trace() == doctest::Approx(2.0));
  std::vector<double> f = a.full();
  CHECK(f[0 * 3 + 2] == 6.0);
  CHECK(f[2 * 3 + 0] == 6.0);
  CHECK(a.frobenius() == doctest::Approx(std::sqrt(2 * 36.0 + 4.0)));
}

TEST_CASE("cholesky solves and rejects indefinite input") {
  SymMatrix a(2);
  a.set(0, 0, 4.0);
  a.set(1, 0, 2.0);
  a.set(1, 1, 3.0);
  // solve [4 2; 2 3] x = [10; 9] -> x = [3/2; 2]
  std::vector<double> x = solve_spd(a, std::vector<double>{10.0, 9.0});
  CHECK(x[0] == doctest::Approx(1.5));
  CHECK(x[1] == doctest::Approx(2.0));
  CHECK(spd_residual(a, x, std::vector<double>{10.0, 9.0}) < 1e-12);

  SymMatrix bad(2);
  bad.set(0, 0, 1.0);
  bad.set(1, 0, 5.0);
  bad.set(1, 1, 1.0);
  CHECK_THROWS_AS(Cholesky{bad}, convergence_error);
}

TEST_CASE("cholesky on a random spd system") {
  const int n = 40;
  SymMatrix a = random_spd(n, 11);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::sin(i + 1.0);
  std::vector<double> x = solve_spd(a, rhs);
  CHECK(spd_residual(a, x, rhs) < 1e-9);
}

TEST_CASE("jacobi eigensolver on a 2x2 with known spectrum") {
  SymMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 0, 1.0);
  a.set(1, 1, 2.0);
  EigenResult e = eigh(a);
  REQUIRE(e.values.size() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("jacobi eigensolver returns ascending orthonormal pairs") {
  const int n = 25;
  SymMatrix a = random_spd(n, 3);
  EigenResult e = eigh(a);
  REQUIRE(static_cast<int>(e.values.size()) == n);

  double trace = 0.0;
  for (int k = 0; k < n; ++k) trace += e.values[k];
  CHECK(trace == doctest::Approx(a.trace()).epsilon(1e-12));

  for (int k = 1; k < n; ++k) CHECK(e.values[k] >= e.values[k - 1]);

  std::vector<double> full = a.full();
  for (int k = 0; k < n; ++k) {
    // residual ||A v - lambda v||_inf
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double av = 0.0;
      for (int j = 0; j < n; ++j) av += full[i * n + j] * e.vectors[k][j];
      worst = std::max(worst, std::abs(av - e.values[k] * e.vectors[k][i]));
    }
    CHECK(worst < 1e-9 * a.frobenius());
    // orthonormality against every earlier vector
    for (int l = 0; l <= k; ++l) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += e.vectors[k][i] * e.vectors[l][i];
      CHECK(dot == doctest::Approx(l == k ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("generalized pencil matches the hand-reduced problem") {
  // A = [[2,-1],[-1,2]], M = diag(1,4).  det(A - s M) = 0:
  // (2-s)(2-4s) - 1 = 4s^2 - 10s + 3 -> s = (10 ± sqrt(52)) / 8.
  SymMatrix a(2);
  a.set(0, 0, 2.0);
  a.set(1, 0, -1.0);
  a.set(1, 1, 2.0);
  EigenResult e = eigh_generalized(a, std::vector<double>{1.0, 4.0});
  const double disc = std::sqrt(52.0);
  CHECK(e.values[0] == doctest::Approx((10.0 - disc) / 8.0).epsilon(1e-13));
  CHECK(e.values[1] == doctest::Approx((10.0 + disc) / 8.0).epsilon(1e-13));

  // M-orthonormality of the returned vectors
  std::vector<double> m = {1.0, 4.0};
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l <= k; ++l) {
      double dot = 0.0;
      for (int i = 0; i < 2; ++i) dot += m[i] * e.vectors[k][i] * e.vectors[l][i];
      CHECK(dot == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("generalized pencil residuals on a random problem") {
  const int n = 15;
  SymMatrix a = random_spd(n, 7);
  std::vector<double> m(n);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(0.5, 3.0);
  for (double& v : m) v = u(rng);
  EigenResult e = eigh_generalized(a, m);
  std::vector<double> full = a.full();
  for (int k = 0; k < n; ++k) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double av = 0.0;
      for (int j = 0; j < n; ++j) av += full[i * n + j] * e.vectors[k][j];
      worst = std::max(worst,
                       std::abs(av - e.values[k] * m[i] * e.vectors[k][i]));
    }
    CHECK(worst < 1e-9 * a.frobenius());
  }
}
