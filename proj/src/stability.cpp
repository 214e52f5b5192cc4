#include "schurlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "schurlab/kron.hpp"
#include "schurlab/solve.hpp"

namespace schurlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::marginal: return "marginal";
  }
  return "?";
}

const char* to_string(PowerVerdict v) {
  switch (v) {
    case PowerVerdict::converging: return "converging";
    case PowerVerdict::diverging: return "diverging";
    case PowerVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict verdict_for_radius(double rho, const Tolerances& tol) {
  if (rho <= 1.0 - tol.marginal_band) return Verdict::stable;
  if (rho >= 1.0 + tol.marginal_band) return Verdict::unstable;
  return Verdict::marginal;
}

StabilityReport is_schur_stable(const Matrix& a, const Tolerances& tol) {
  StabilityReport report;
  report.spectrum = eigenvalues(a, tol);
  report.spectral_radius = report.spectrum.spectral_radius;
  report.margin = 1.0 - report.spectral_radius;
  report.verdict = verdict_for_radius(report.spectral_radius, tol);
  return report;
}

TwoByTwoCriterion schur_2x2(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) {
    throw std::invalid_argument("schur_2x2: 2x2 matrix required");
  }
  TwoByTwoCriterion c;
  c.trace = a(0, 0) + a(1, 1);
  c.determinant = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  c.trace_condition = std::abs(c.trace) < 1.0 + c.determinant;
  c.det_condition = std::abs(c.determinant) < 1.0;
  c.stable = c.trace_condition && c.det_condition;
  return c;
}

SteinSolution solve_stein(const Matrix& a, const Matrix& r, const Tolerances& tol) {
  require_square(a, "solve_stein");
  require_symmetric(r, tol.symmetry_tolerance, "solve_stein (R)");
  require_same_shape(a, r, "solve_stein");
  const std::size_t n = a.rows();

  const Matrix at = a.transposed();
  Matrix system = kron(at, at);
  for (std::size_t k = 0; k < n * n; ++k)
    for (std::size_t l = 0; l < n * n; ++l) system(k, l) = (k == l ? 1.0 : 0.0) - system(k, l);

  std::vector<double> x_vec;
  try {
    x_vec = solve_linear(system, vec(r), tol);
  } catch (const numerical_error&) {
    throw numerical_error(
        "solve_stein: system is singular (some eigenvalue product lambda_i lambda_j = 1); "
        "no unique solution");
  }

  SteinSolution sol;
  sol.x = symmetric_part(unvec(x_vec, n));
  sol.residual = (sol.x - at * sol.x * a - r).frobenius_norm();
  const std::vector<double> eigs = symmetric_eigenvalues(sol.x, tol);
  sol.min_eigenvalue = eigs.front();
  return sol;
}

SteinSeries stein_series(const Matrix& a, const Matrix& r, int k_terms, const Tolerances& tol) {
  require_square(a, "stein_series");
  require_symmetric(r, tol.symmetry_tolerance, "stein_series (R)");
  require_same_shape(a, r, "stein_series");
  if (k_terms < 0) throw std::invalid_argument("stein_series: K >= 0 required");

  SteinSeries result;
  result.sum = r;
  result.last_term_norm = r.frobenius_norm();
  Matrix term = r;
  Matrix power = a;  // A^k for the current term
  for (int k = 1; k <= k_terms; ++k) {
    term = power.transposed() * r * power;
    result.last_term_norm = term.frobenius_norm();
    if (!std::isfinite(result.last_term_norm) || result.last_term_norm > 1e120) {
      throw numerical_error("stein_series: series diverges (A is not Schur stable)");
    }
    result.sum += term;
    if (k < k_terms) power = power * a;
  }
  return result;
}

namespace {

double min_symmetric_eigenvalue(const Matrix& s, const Tolerances& tol) {
  return symmetric_eigenvalues(s, tol).front();
}

}  // namespace

SdlcpCertificate verify_sdlcp(const Matrix& a, const Matrix& q, const Matrix& x,
                              const Matrix& y, const Tolerances& tol) {
  require_square(a, "verify_sdlcp");
  require_same_shape(a, q, "verify_sdlcp (Q)");
  require_same_shape(a, x, "verify_sdlcp (X)");
  require_same_shape(a, y, "verify_sdlcp (Y)");
  require_symmetric(q, tol.symmetry_tolerance, "verify_sdlcp (Q)");
  require_symmetric(x, tol.symmetry_tolerance, "verify_sdlcp (X)");
  require_symmetric(y, tol.symmetry_tolerance, "verify_sdlcp (Y)");

  SdlcpCertificate cert;
  cert.x = x;
  cert.y = y;
  cert.gaps.symmetry = std::max(x.asymmetry(), y.asymmetry());
  cert.gaps.equation = (y - x + a.transposed() * x * a - q).frobenius_norm();
  cert.gaps.min_eigenvalue_x = min_symmetric_eigenvalue(x, tol);
  cert.gaps.min_eigenvalue_y = min_symmetric_eigenvalue(y, tol);
  cert.gaps.complementarity = std::abs((y * x).trace());
  cert.valid = cert.gaps.equation <= tol.sdlcp_tolerance * (1.0 + q.frobenius_norm()) &&
               cert.gaps.min_eigenvalue_x >= -tol.sdlcp_tolerance &&
               cert.gaps.min_eigenvalue_y >= -tol.sdlcp_tolerance &&
               cert.gaps.complementarity <=
                   tol.sdlcp_tolerance * (1.0 + x.frobenius_norm() * y.frobenius_norm());
  return cert;
}

SdlcpSpecialResult sdlcp_special_solve(const Matrix& a, const Matrix& q, const Tolerances& tol) {
  require_square(a, "sdlcp_special_solve");
  require_symmetric(q, tol.symmetry_tolerance, "sdlcp_special_solve (Q)");
  require_same_shape(a, q, "sdlcp_special_solve");

  const SteinSolution stein = solve_stein(a, -q, tol);
  SdlcpSpecialResult result;
  if (stein.min_eigenvalue < -tol.sdlcp_tolerance) {
    result.solved = false;
    result.reason = "Stein solution is not positive semidefinite; "
                    "problem not solved by the Y = 0 special case";
    return result;
  }
  result.solved = true;
  result.certificate = verify_sdlcp(a, q, stein.x, Matrix(a.rows(), a.cols()), tol);
  return result;
}

PowerLimitResult power_limit(const Matrix& a, int k_max) {
  require_square(a, "power_limit");
  if (k_max < 1) throw std::invalid_argument("power_limit: k_max >= 1 required");

  PowerLimitResult result;
  constexpr std::size_t kTailWindow = 8;
  Matrix power = a;
  for (int k = 1; k <= k_max; ++k) {
    const double norm = power.frobenius_norm();
    result.tail_norms.push_back(norm);
    if (result.tail_norms.size() > kTailWindow) {
      result.tail_norms.erase(result.tail_norms.begin());
    }
    result.steps = k;
    if (!std::isfinite(norm) || norm > 1e10) {
      result.verdict = PowerVerdict::diverging;
      return result;
    }
    if (norm < 1e-10) {
      result.verdict = PowerVerdict::converging;
      return result;
    }
    if (k < k_max) power = power * a;
  }
  result.verdict = PowerVerdict::inconclusive;
  return result;
}

namespace {

// lambda_max of the Hermitian part of e^{i theta} A, via the real embedding
// [[S, -K], [K, S]] with S = cos(theta)(A+A^t)/2, K = sin(theta)(A-A^t)/2.
double rotated_top_eigenvalue(const Matrix& sym, const Matrix& skew, double theta,
                              const Tolerances& tol) {
  const std::size_t n = sym.rows();
  const double c = std::cos(theta), s = std::sin(theta);
  Matrix h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double sv = c * sym(i, j);
      const double kv = s * skew(i, j);
      h(i, j) = sv;
      h(n + i, n + j) = sv;
      h(i, n + j) = -kv;
      h(n + i, j) = kv;
    }
  return symmetric_eigenvalues(h, tol).back();
}

}  // namespace

double numerical_radius(const Matrix& a, const Tolerances& tol) {
  require_square(a, "numerical_radius");
  const Matrix sym = symmetric_part(a);
  const Matrix skew = skew_part(a);
  if (skew.frobenius_norm() == 0.0) {
    // Symmetric case: w(A) = rho(A) = max(|lambda_min|, |lambda_max|).
    const std::vector<double> eigs = symmetric_eigenvalues(sym, tol);
    return std::max(std::abs(eigs.front()), std::abs(eigs.back()));
  }

  const double pi = 3.14159265358979323846;
  constexpr int kGridPoints = 256;
  auto f = [&](double theta) { return rotated_top_eigenvalue(sym, skew, theta, tol); };

  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> values(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) {
    values[k] = f(pi * k / (kGridPoints - 1));
    if (values[k] > best_value) {
      best_value = values[k];
      best = k;
    }
  }

  // Successive parabolic interpolation inside the bracketing grid interval,
  // safeguarded by bisection, down to 1e-8 in theta.
  const double step = pi / (kGridPoints - 1);
  double xa = pi * std::max(best - 1, 0) / (kGridPoints - 1);
  double xc = pi * std::min(best + 1, kGridPoints - 1) / (kGridPoints - 1);
  double xb, fa, fb, fc;
  if (best == 0 || best == kGridPoints - 1) {
    xb = 0.5 * (xa + xc);
    fa = values[std::max(best - 1, 0)];
    fc = values[std::min(best + 1, kGridPoints - 1)];
    fb = f(xb);
  } else {
    xb = pi * best / (kGridPoints - 1);
    fa = values[best - 1];
    fb = values[best];
    fc = values[best + 1];
  }
  best_value = std::max(best_value, fb);
  int evaluations = 0;
  while (xc - xa > 1e-8 && evaluations++ < 200) {
    const double d1 = (xb - xa) * (fb - fc);
    const double d2 = (xb - xc) * (fb - fa);
    const double denom = 2.0 * (d1 - d2);
    double x_new;
    const double guard = 1e-10 * step;
    if (std::abs(denom) < 1e-300) {
      x_new = (xc - xb > xb - xa) ? 0.5 * (xb + xc) : 0.5 * (xa + xb);
    } else {
      x_new = xb - ((xb - xa) * d1 - (xb - xc) * d2) / denom;
      if (!(x_new > xa + guard && x_new < xc - guard) || std::abs(x_new - xb) < guard) {
        x_new = (xc - xb > xb - xa) ? 0.5 * (xb + xc) : 0.5 * (xa + xb);
      }
    }
    const double f_new = f(x_new);
    best_value = std::max(best_value, f_new);
    if (x_new < xb) {
      if (f_new >= fb) {
        xc = xb; fc = fb; xb = x_new; fb = f_new;
      } else {
        xa = x_new; fa = f_new;
      }
    } else {
      if (f_new >= fb) {
        xa = xb; fa = fb; xb = x_new; fb = f_new;
      } else {
        xc = x_new; fc = f_new;
      }
    }
  }
  return best_value;
}

AloidClassification classify_aloid(const Matrix& a, const Tolerances& tol) {
  require_square(a, "classify_aloid");
  AloidClassification c;
  c.rho = spectral_radius(a, tol);
  c.norm = operator_norm(a, tol);
  double w = numerical_radius(a, tol);
  // rho <= w <= norm holds exactly; clamp numerical drift within tolerance.
  const double slack = tol.aloid_tolerance * std::max(1.0, c.norm);
  if (w < c.rho && c.rho - w <= slack) w = c.rho;
  if (w > c.norm && w - c.norm <= slack) w = c.norm;
  c.numerical_radius = w;
  c.normaloid = (c.norm - c.rho) <= tol.aloid_tolerance * std::max(c.norm, 1e-300);
  c.spectraloid =
      c.normaloid || (w - c.rho) <= tol.aloid_tolerance * std::max(w, 1e-300);
  return c;
}

bool is_nilpotent(const Matrix& a, const Tolerances& tol) {
  require_square(a, "is_nilpotent");
  const std::size_t n = a.rows();
  const double norm = a.frobenius_norm();
  Matrix power = a;
  for (std::size_t k = 1; k < n; ++k) {
    power = power * a;
    if (!power.all_finite()) return false;
  }
  (void)tol;
  return power.frobenius_norm() <= 1e-8 * std::max(1.0, std::pow(norm, static_cast<double>(n)));
}

}  // namespace schurlab
