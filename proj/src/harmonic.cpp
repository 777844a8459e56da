#include "steklov/harmonic.hpp"

#include <cmath>

namespace steklov {

namespace {

constexpr int kDenseSolveCap = 3000;

// Interior block of the unnormalized window Laplacian.  Diagonal entries are
// loop-free weighted degrees (a self-loop cancels from the Laplacian).
SparseSym interior_block(const Window& w) {
  std::vector<Triplet> t;
  for (int x : w.interior()) {
    const int ix = w.interior_position(x);
    double deg = 0.0;
    for (auto [y, mu] : w.neighbors(x)) {
      if (y == x) continue;
      deg += mu;
      const int iy = w.in_window(y) ? w.interior_position(y) : -1;
      if (iy >= 0 && y > x) t.push_back({ix, iy, -mu});
    }
    t.push_back({ix, ix, deg});
  }
  return SparseSym::from_triplets(static_cast<int>(w.interior().size()),
                                  std::move(t));
}

}  // namespace

HarmonicSolver::HarmonicSolver(const Window& w) : win_(&w) {
  const int ni = w.interior_size();
  if (ni == 0) {
    path_ = "empty";
    return;
  }
  auto block = std::make_unique<SparseSym>(interior_block(w));
  auto forest = std::make_unique<ForestSolver>(*block);
  if (forest->ok()) {
    path_ = "forest";
    forest_ = std::move(forest);
    return;
  }
  if (ni <= kDenseSolveCap) {
    path_ = "dense";
    SymMatrix a(ni);
    for (int i = 0; i < ni; ++i)
      for (auto [j, v] : block->row(i))
        if (j <= i) a.set(i, j, v);
    dense_ = std::make_unique<Cholesky>(a);
    return;
  }
  path_ = "cg";
  sparse_ = std::move(block);
}

std::vector<double> HarmonicSolver::solve_interior(
    std::span<const double> rhs) const {
  const int ni = win_->interior_size();
  if (static_cast<int>(rhs.size()) != ni)
    throw input_error("harmonic: rhs size mismatch");
  if (ni == 0) return {};
  if (forest_) return forest_->solve(rhs);
  if (dense_) return dense_->solve(rhs);
  return cg_solve(*sparse_, rhs, 1e-12, 40 * ni + 200);
}

Extension HarmonicSolver::extend(std::span<const double> f) const {
  const Window& w = *win_;
  if (static_cast<int>(f.size()) != w.boundary_size())
    throw input_error("harmonic: boundary data size mismatch");

  std::vector<double> rhs(w.interior_size(), 0.0);
  for (int x : w.interior()) {
    double acc = 0.0;
    for (auto [y, mu] : w.neighbors(x)) {
      const int by = w.in_window(y) ? w.boundary_position(y) : -1;
      if (by >= 0) acc += mu * f[by];
    }
    rhs[w.interior_position(x)] = acc;
  }
  const std::vector<double> sol = solve_interior(rhs);

  Extension u;
  u.values.assign(w.total_size(), 0.0);
  for (int x : w.interior()) u.values[x] = sol[w.interior_position(x)];
  for (int z : w.boundary()) u.values[z] = f[w.boundary_position(z)];
  return u;
}

Extension harmonic_extension(const Window& w, std::span<const double> f) {
  return HarmonicSolver(w).extend(f);
}

double laplacian_at(const Window& w, std::span<const double> values,
                    int local) {
  if (!w.in_window(local))
    throw input_error("laplacian: vertex outside the window");
  double acc = 0.0;
  for (auto [y, mu] : w.neighbors(local))
    acc += mu * (values[y] - values[local]);
  return acc / w.measure(local);
}

BoundaryData normal_derivative(const Window& w, const Extension& u) {
  BoundaryData out;
  out.values.reserve(w.boundary_size());
  for (int z : w.boundary()) {
    double acc = 0.0;
    for (auto [x, mu] : w.neighbors(z)) acc += mu * (u.values[z] - u.values[x]);
    out.values.push_back(acc / w.measure(z));
  }
  return out;
}

double dirichlet_energy(const Window& w, std::span<const double> values) {
  return dirichlet_form(w, values, values);
}

double dirichlet_form(const Window& w, std::span<const double> u,
                      std::span<const double> v) {
  if (u.size() != static_cast<size_t>(w.total_size()) || u.size() != v.size())
    throw input_error("dirichlet form: value vector size mismatch");
  double acc = 0.0;
  for (const auto& e : w.edges())
    acc += e.w * (u[e.a] - u[e.b]) * (v[e.a] - v[e.b]);
  return acc;
}

double green_residual(const Window& w, std::span<const double> u,
                      std::span<const double> g) {
  if (u.size() != static_cast<size_t>(w.total_size()) || u.size() != g.size())
    throw input_error("green: value vector size mismatch");
  double lhs = 0.0;
  for (int x = 0; x < w.window_size(); ++x) {
    double acc = 0.0;
    for (auto [y, mu] : w.neighbors(x)) acc += mu * (u[y] - u[x]);
    lhs += acc * g[x];
  }
  double boundary_term = 0.0;
  for (int z = w.window_size(); z < w.total_size(); ++z) {
    double acc = 0.0;
    for (auto [x, mu] : w.neighbors(z)) acc += mu * (u[z] - u[x]);
    boundary_term += acc * g[z];
  }
  return std::fabs(lhs + dirichlet_form(w, u, g) - boundary_term);
}

double capacity(const Window& w, std::span<const double> f) {
  const Extension u = harmonic_extension(w, f);
  return dirichlet_energy(w, u.values);
}

}  // namespace steklov
