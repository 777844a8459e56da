#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/numerics.hpp"
#include "steklov/sparse.hpp"

namespace steklov {

// Values over W∩δΩ, aligned with Window::boundary().
struct BoundaryData {
  std::vector<double> values;
};

// A function on the closed window W ∪ δW, aligned with window locals.
// Extensions built by HarmonicSolver vanish on the collar.
struct Extension {
  std::vector<double> values;
};

// Factors the interior block of the window Laplacian once and serves many
// right-hand sides.  Path selection: exact forest elimination whenever the
// interior coupling graph is a forest, dense Cholesky up to 3000 unknowns,
// conjugate gradients beyond.
class HarmonicSolver {
 public:
  explicit HarmonicSolver(const Window& w);

  const Window& window() const { return *win_; }
  const std::string& path() const { return path_; }

  // Solve L_ii x = rhs for a right-hand side over interior positions.
  std::vector<double> solve_interior(std::span<const double> rhs) const;

  // Harmonic extension of boundary data f (zero on the collar).
  Extension extend(std::span<const double> f) const;

 private:
  const Window* win_;
  std::string path_;
  std::unique_ptr<Cholesky> dense_;
  std::unique_ptr<ForestSolver> forest_;
  std::unique_ptr<SparseSym> sparse_;
};

Extension harmonic_extension(const Window& w, std::span<const double> f);

// Normalized Laplacian (1/d(x)) Σ μ_xy (u(y) - u(x)) at a window vertex.
double laplacian_at(const Window& w, std::span<const double> values, int local);

// Inward normal derivative on W∩δΩ:
//   ∂u/∂n(z) = (1/d(z)) Σ_{x ~ z} μ_zx (u(z) - u(x)).
BoundaryData normal_derivative(const Window& w, const Extension& u);

// Dirichlet energy over E(W, W ∪ δW); the bilinear form D_W(u, v).
double dirichlet_energy(const Window& w, std::span<const double> values);
double dirichlet_form(const Window& w, std::span<const double> u,
                      std::span<const double> v);

// |⟨Δu, g⟩_W + D_W(u,g) - ⟨∂u/∂n, g⟩_{δW}|, which vanishes identically.
double green_residual(const Window& w, std::span<const double> u,
                      std::span<const double> g);

// Cap(f, W) = D_W(u_f) over competitors supported in W that agree with f on
// the boundary part.
double capacity(const Window& w, std::span<const double> f);

}  // namespace steklov
