#pragma once

#include <span>
#include <vector>

#include "steklov/graph.hpp"
#include "steklov/harmonic.hpp"
#include "steklov/numerics.hpp"

namespace steklov {

// The quadratic form of the Dirichlet-to-Neumann operator on W∩δΩ:
//   f · (b g) = D_W(u_f, u_g),   b[z][y] = d(z) · (Λ_W e_y)(z),
// together with the boundary masses d(z).  Eigenvalues of the pencil
// (b, diag(mass)) are the Steklov spectrum of the window.
struct DtnForm {
  SymMatrix b;
  std::vector<double> mass;
};

// Schur complement route: delete the collar, eliminate the interior block of
// the unnormalized Laplacian.  Requires W∩δΩ to be nonempty.
DtnForm assemble_dtn(const Window& w);

// Independent assembly routed through per-column harmonic extensions and the
// normal-derivative formula; kept as a cross-check, not a production path.
SymMatrix dtn_matrix_via_extensions(const Window& w);

// Steklov eigenvalues σ_1 ≤ ... ≤ σ_P of the window, all within [0, 1].
std::vector<double> dtn_spectrum(const Window& w);

// Λ_W f evaluated through the harmonic extension of f.
BoundaryData apply_dtn(const Window& w, std::span<const double> f);

// Eigenvalues of the Dirichlet pencil (L_W, diag d|_W); #W values in [0, 2].
std::vector<double> dirichlet_laplacian_spectrum(const Window& w);

// Same pencil under the blow-up measure m^(r): d on W∩δΩ, d/r on W∩Ω.
std::vector<double> blowup_spectrum(const Window& w, double r);

struct BlowupRow {
  double r;
  std::vector<double> lambda;
};

// Geometric schedule r = r0, r0*factor, ... capped at r1.
std::vector<BlowupRow> blowup_convergence(const Window& w, double r0,
                                          double r1, double factor);

}  // namespace steklov
