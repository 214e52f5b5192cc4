#pragma once

#include <complex>
#include <vector>

#include "schurlab/config.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

// Full spectrum with a per-eigenvalue residual certificate.
// Eigenvalues are sorted by (re, im); non-real values come in exact
// conjugate pairs.  spectral_radius is the max modulus over the list.
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<double> residuals;  // sigma_min(A - lambda I), one per eigenvalue
  double spectral_radius = 0.0;
};

// All eigenvalues of a general real square matrix: balance, orthogonal
// reduction to Hessenberg form, then implicitly shifted QR with 2x2
// trailing-block extraction.  Iteration budget is 40 n; exceeding it throws.
Spectrum eigenvalues(const Matrix& a, const Tolerances& tol = {});

// Same QR path without the residual certificates (used inside sampling loops).
std::vector<std::complex<double>> eigenvalues_uncertified(const Matrix& a,
                                                          const Tolerances& tol = {});

double spectral_radius(const Matrix& a, const Tolerances& tol = {});

// Spectrum of a symmetric matrix in nondecreasing order, via cyclic Jacobi
// rotations.  Rejects input that is asymmetric beyond tolerance.
std::vector<double> symmetric_eigenvalues(const Matrix& s, const Tolerances& tol = {});

// Largest singular value: sqrt of the top eigenvalue of A^t A.
double operator_norm(const Matrix& a, const Tolerances& tol = {});

// sigma_min(A - lambda I), computed on the real 2n x 2n embedding of the
// complex shift by LU-based inverse iteration.  The estimate converges to
// sigma_min from above, so certificates never under-report.
double shifted_min_singular_value(const Matrix& a, std::complex<double> lambda);

}  // namespace schurlab
