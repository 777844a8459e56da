#include "steklov/dtn.hpp"

#include <cmath>

namespace steklov {

namespace {

constexpr int kDenseSpectrumCap = 600;

void require_boundary(const Window& w, const char* op) {
  if (w.boundary_size() == 0)
    throw input_error(std::string(op) + ": window has no boundary part");
}

// Unnormalized Laplacian over the window vertices (collar deleted): loop-free
// weighted degrees on the diagonal, -μ couplings inside W.
SymMatrix window_laplacian(const Window& w) {
  const int n = w.window_size();
  SymMatrix l(n);
  for (int x = 0; x < n; ++x) {
    double deg = 0.0;
    for (auto [y, mu] : w.neighbors(x)) {
      if (y == x) continue;
      deg += mu;
      if (w.in_window(y) && y < x) l.add(x, y, -mu);
    }
    l.set(x, x, deg);
  }
  return l;
}

std::vector<double> window_masses(const Window& w, double interior_scale) {
  std::vector<double> m(w.window_size());
  for (int x = 0; x < w.window_size(); ++x)
    m[x] = w.kind(x) == VertexKind::Interior ? w.measure(x) * interior_scale
                                             : w.measure(x);
  return m;
}

}  // namespace

DtnForm assemble_dtn(const Window& w) {
  require_boundary(w, "dtn");
  const int p = w.boundary_size();
  HarmonicSolver solver(w);

  // Columns of X = L_ii^{-1} L_ib, one interior solve per boundary vertex.
  std::vector<std::vector<double>> x_cols(p);
  std::vector<double> rhs(w.interior_size());
  for (int col = 0; col < p; ++col) {
    const int z = w.boundary()[col];
    std::fill(rhs.begin(), rhs.end(), 0.0);
    for (auto [y, mu] : w.neighbors(z)) {
      const int iy = w.in_window(y) ? w.interior_position(y) : -1;
      if (iy >= 0) rhs[iy] += mu;
    }
    x_cols[col] = solver.solve_interior(rhs);
  }

  DtnForm form{SymMatrix(p), w.boundary_measures()};
  for (int col = 0; col < p; ++col) {
    const int z = w.boundary()[col];
    for (int row = 0; row <= col; ++row) {
      // b[row][col] = L_bb[row][col] - (L_bi x_col)[row]; boundary-boundary
      // couplings vanish after pruning, so L_bb is the diagonal of degrees.
      double v = 0.0;
      const int zr = w.boundary()[row];
      for (auto [y, mu] : w.neighbors(zr)) {
        const int iy = w.in_window(y) ? w.interior_position(y) : -1;
        if (iy >= 0) v += mu * x_cols[col][iy];
      }
      double diag = 0.0;
      if (row == col)
        for (auto [y, mu] : w.neighbors(z)) {
          (void)y;
          diag += mu;
        }
      form.b.set(col, row, diag - v);
    }
  }
  return form;
}

SymMatrix dtn_matrix_via_extensions(const Window& w) {
  require_boundary(w, "dtn");
  const int p = w.boundary_size();
  HarmonicSolver solver(w);
  SymMatrix b(p);
  std::vector<double> f(p, 0.0);
  for (int col = 0; col < p; ++col) {
    f[col] = 1.0;
    const Extension u = solver.extend(f);
    f[col] = 0.0;
    const BoundaryData flux = normal_derivative(w, u);
    for (int row = 0; row < p; ++row) {
      const double entry = w.measure(w.boundary()[row]) * flux.values[row];
      if (row >= col) b.set(row, col, entry);
    }
  }
  return b;
}

std::vector<double> dtn_spectrum(const Window& w) {
  DtnForm form = assemble_dtn(w);
  return eigh_generalized(form.b, form.mass).values;
}

BoundaryData apply_dtn(const Window& w, std::span<const double> f) {
  require_boundary(w, "dtn");
  return normal_derivative(w, harmonic_extension(w, f));
}

std::vector<double> dirichlet_laplacian_spectrum(const Window& w) {
  return blowup_spectrum(w, 1.0);
}

std::vector<double> blowup_spectrum(const Window& w, double r) {
  if (!(r > 0.0)) throw input_error("blowup: r must be positive");
  if (w.window_size() > kDenseSpectrumCap)
    throw budget_error("spectrum: window above dense eigensolver cap (" +
                       std::to_string(kDenseSpectrumCap) + " vertices)");
  const SymMatrix l = window_laplacian(w);
  const std::vector<double> m = window_masses(w, 1.0 / r);
  return eigh_generalized(l, m).values;
}

std::vector<BlowupRow> blowup_convergence(const Window& w, double r0,
                                          double r1, double factor) {
  if (!(r0 > 0.0) || !(r1 >= r0) || !(factor > 1.0))
    throw input_error("blowup schedule: need 0 < r0 <= r1 and factor > 1");
  if (w.window_size() > kDenseSpectrumCap)
    throw budget_error("spectrum: window above dense eigensolver cap");
  const SymMatrix l = window_laplacian(w);
  std::vector<BlowupRow> rows;
  for (double r = r0; r <= r1 * (1.0 + 1e-12); r *= factor) {
    const std::vector<double> m = window_masses(w, 1.0 / r);
    rows.push_back({r, eigh_generalized(l, m).values});
  }
  return rows;
}

}  // namespace steklov
