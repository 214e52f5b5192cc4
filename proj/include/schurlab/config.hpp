#pragma once

#include <cstddef>
#include <stdexcept>

namespace schurlab {

// Numerical failure: non-convergence, singularity, divergence.
// The CLI maps this to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every tolerance and iteration limit the library uses, in one place, so
// that verdicts are reproducible.  All comparisons quote these defaults.
struct Tolerances {
  double residual_tolerance = 1e-8;   // eigenvalue certificate: sigma_min(A - lambda I) <= tol * (1 + ||A||_F)
  double symmetry_tolerance = 1e-10;  // accept S as symmetric when ||S - S^t||_F <= tol * ||S||_F
  double solve_tolerance = 1e-10;     // linear solve residual bound
  double jacobi_tolerance = 1e-12;    // Jacobi convergence: off-diagonal mass <= tol * ||S||_F
  double stein_tolerance = 1e-8;      // Stein residual bound, relative to 1 + ||R||_F
  double sdlcp_tolerance = 1e-8;      // feasibility gap acceptance for complementarity certificates
  double marginal_band = 1e-9;        // |rho - 1| <= band is a marginal verdict, never a boolean
  double aloid_tolerance = 1e-6;      // relative equality for normaloid / spectraloid tests
  double separation = 1e-6;           // strict counterexample separation from the unit circle
  double condition_limit = 1e12;      // refuse to invert beyond this 1-norm condition estimate
  std::size_t analysis_limit = 144;   // largest operator representation eigen-analysis accepts
  int qr_iteration_budget_per_n = 40; // total QR iterations allowed = 40 n
  int jacobi_max_sweeps = 64;
};

}  // namespace schurlab
