#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurlab/config.hpp"
#include "schurlab/eigen.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

// Three-valued verdict: membership in the open unit disc is not decidable
// at floating point, so |rho - 1| <= marginal_band is reported as marginal.
enum class Verdict { stable, unstable, marginal };
const char* to_string(Verdict v);

// The closed-form 2x2 criterion: stable iff |trace| < 1 + det and |det| < 1.
struct TwoByTwoCriterion {
  double trace = 0.0;
  double determinant = 0.0;
  bool trace_condition = false;  // |trace| < 1 + det
  bool det_condition = false;    // |det| < 1
  bool stable = false;
};

// Solution of X - A^t X A = R, symmetrized.  min_eigenvalue > 0 certifies
// stability when R is positive definite.
struct SteinSolution {
  Matrix x;
  double residual = 0.0;  // ||X - A^t X A - R||_F
  double min_eigenvalue = 0.0;
};

struct SteinSeries {
  Matrix sum;                   // sum_{k=0..K} (A^t)^k R A^k
  double last_term_norm = 0.0;  // Frobenius norm of the K-th term
};

struct SdlcpGaps {
  double symmetry = 0.0;         // max asymmetry over X, Y
  double equation = 0.0;         // ||Y - X + A^t X A - Q||_F
  double min_eigenvalue_x = 0.0;
  double min_eigenvalue_y = 0.0;
  double complementarity = 0.0;  // |trace(Y X)|
};

// Feasibility certificate for: X psd, Y = X - A^t X A + Q psd, trace(YX) = 0.
// Acceptance is positive SEMIdefinite (min eig >= -sdlcp_tolerance): strict
// definiteness of both X and Y is incompatible with trace(YX) = 0.
struct SdlcpCertificate {
  Matrix x;
  Matrix y;
  SdlcpGaps gaps;
  bool valid = false;
};

struct SdlcpSpecialResult {
  bool solved = false;
  std::optional<SdlcpCertificate> certificate;
  std::string reason;  // set when unsolved by the special case
};

enum class PowerVerdict { converging, diverging, inconclusive };
const char* to_string(PowerVerdict v);

struct PowerLimitResult {
  PowerVerdict verdict = PowerVerdict::inconclusive;
  int steps = 0;                   // k at which the verdict was reached
  std::vector<double> tail_norms;  // ||A^k||_F for the last few k
};

struct AloidClassification {
  bool normaloid = false;
  bool spectraloid = false;
  double rho = 0.0;
  double norm = 0.0;              // spectral norm ||A||
  double numerical_radius = 0.0;  // w(A), clamped into [rho, norm] when within tolerance
};

// Verdict plus everything a caller may attach as supporting evidence.
struct StabilityReport {
  Verdict verdict = Verdict::marginal;
  double spectral_radius = 0.0;
  double margin = 0.0;  // 1 - rho
  Spectrum spectrum;
  std::optional<TwoByTwoCriterion> two_by_two;
  std::optional<SteinSolution> stein;
  std::optional<PowerLimitResult> power;
  std::optional<AloidClassification> aloid;
};

StabilityReport is_schur_stable(const Matrix& a, const Tolerances& tol = {});
Verdict verdict_for_radius(double rho, const Tolerances& tol = {});

TwoByTwoCriterion schur_2x2(const Matrix& a);

// Solves (I - A^t (x) A^t) vec(X) = vec(R); throws numerical_error when some
// eigenvalue product lambda_i lambda_j equals 1 (no unique solution).
SteinSolution solve_stein(const Matrix& a, const Matrix& r, const Tolerances& tol = {});

// Truncated series oracle for the Stein equation; diverges (throws) when the
// terms overflow, which happens exactly for sufficiently unstable A.
SteinSeries stein_series(const Matrix& a, const Matrix& r, int k_terms,
                         const Tolerances& tol = {});

SdlcpCertificate verify_sdlcp(const Matrix& a, const Matrix& q, const Matrix& x,
                              const Matrix& y, const Tolerances& tol = {});

// Stein-backed special case: X solves X - A^t X A = -Q, Y = 0.  Returns
// unsolved (without claiming infeasibility) when that X is not psd.
SdlcpSpecialResult sdlcp_special_solve(const Matrix& a, const Matrix& q,
                                       const Tolerances& tol = {});

PowerLimitResult power_limit(const Matrix& a, int k_max);

// w(A) = max over theta in [0, pi] of lambda_max(H(theta)) with
// H(theta) = cos(theta) (A+A^t)/2 + i sin(theta) (A-A^t)/2, evaluated on the
// real symmetric 2n x 2n embedding; 256-point grid plus parabolic refinement.
double numerical_radius(const Matrix& a, const Tolerances& tol = {});

AloidClassification classify_aloid(const Matrix& a, const Tolerances& tol = {});

// ||A^n||_F <= 1e-8 * max(1, ||A||_F^n).
bool is_nilpotent(const Matrix& a, const Tolerances& tol = {});

}  // namespace schurlab
