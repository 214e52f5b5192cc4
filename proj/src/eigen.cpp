#include "schurlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "schurlab/solve.hpp"

namespace schurlab {

namespace {

// Diagonal similarity scaling by powers of two (exact in floating point);
// improves eigenvalue accuracy for badly scaled inputs.
void balance_in_place(Matrix& a) {
  const std::size_t n = a.rows();
  const double radix = 2.0, radix_sq = radix * radix;
  bool done = false;
  int guard = 0;
  while (!done && guard++ < 100) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv_f = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv_f;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder similarity reduction to upper Hessenberg form (eigenvalues only).
void hessenberg_in_place(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale = std::max(scale, std::abs(a(i, k)));
    if (scale == 0.0) continue;
    double xnorm_sq = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = a(k + 1 + i, k) / scale;
      xnorm_sq += v[i] * v[i];
    }
    const double xnorm = std::sqrt(xnorm_sq);
    if (xnorm == 0.0) continue;
    const double alpha = -std::copysign(xnorm, v[0]);
    v[0] -= alpha;
    double vnorm_sq = 0.0;
    for (std::size_t i = 0; i < len; ++i) vnorm_sq += v[i] * v[i];
    if (vnorm_sq == 0.0) continue;
    const double two_over = 2.0 / vnorm_sq;
    // Left: rows k+1..n-1.
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < len; ++i) dot += v[i] * a(k + 1 + i, j);
      dot *= two_over;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= dot * v[i];
    }
    // Right: columns k+1..n-1.
    for (std::size_t i = 0; i < n; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < len; ++j) dot += a(i, k + 1 + j) * v[j];
      dot *= two_over;
      for (std::size_t j = 0; j < len; ++j) a(i, k + 1 + j) -= dot * v[j];
    }
    a(k + 1, k) = alpha * scale;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Implicitly shifted double QR on an upper Hessenberg matrix, after the
// classic Martin-Peters-Wilkinson formulation.  Consumes `h`.
std::vector<std::complex<double>> hqr_eigenvalues(Matrix h, int iteration_budget) {
  const int n = static_cast<int>(h.rows());
  std::vector<std::complex<double>> w(static_cast<std::size_t>(n));
  if (n == 0) return w;

  double norm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += std::abs(h(i, j));

  int en = n - 1;
  double t = 0.0;
  int itn = iteration_budget;

  while (en >= 0) {
    int its = 0;
    const int na = en - 1;
    const int enm2 = en - 2;
    for (;;) {
      // Look for a single small subdiagonal element.
      int l = en;
      for (; l >= 1; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = norm;
        if (s + std::abs(h(l, l - 1)) == s) break;
      }
      if (l < 0) l = 0;

      double x = h(en, en);
      if (l == en) {  // one root
        w[en] = {x + t, 0.0};
        en = na;
        break;
      }
      double y = h(na, na);
      double ww = h(en, na) * h(na, en);
      if (l == na) {  // two roots from the trailing 2x2 block
        const double p = (y - x) / 2.0;
        const double q = p * p + ww;
        double zz = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          zz = p + std::copysign(zz, p);
          const double wr1 = x + zz;
          const double wr2 = (zz != 0.0) ? x - ww / zz : wr1;
          w[na] = {wr1, 0.0};
          w[en] = {wr2, 0.0};
        } else {
          w[na] = {x + p, zz};
          w[en] = {x + p, -zz};
        }
        en = enm2;
        break;
      }

      if (itn <= 0) {
        throw numerical_error("eigenvalues: QR iteration did not converge within the 40n budget");
      }
      if (its == 10 || its == 20) {  // exceptional shift
        t += x;
        for (int i = 0; i <= en; ++i) h(i, i) -= x;
        const double s = std::abs(h(en, na)) + std::abs(h(na, enm2));
        x = 0.75 * s;
        y = x;
        ww = -0.4375 * s * s;
      }
      ++its;
      --itn;

      // Look for two consecutive small subdiagonal elements.
      int m = enm2;
      double p = 0.0, q = 0.0, r = 0.0;
      for (; m >= l; --m) {
        const double zz = h(m, m);
        const double rr = x - zz;
        const double ss = y - zz;
        p = (rr * ss - ww) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - zz - rr - ss;
        r = h(m + 2, m + 1);
        const double sc = std::abs(p) + std::abs(q) + std::abs(r);
        p /= sc;
        q /= sc;
        r /= sc;
        if (m == l) break;
        const double tst1 =
            std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) + std::abs(h(m + 1, m + 1)));
        if (tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) == tst1) break;
      }
      for (int i = m + 2; i <= en; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      // Double QR step on rows l..en, columns m..en.
      for (int k = m; k <= na; ++k) {
        const bool notlast = (k != na);
        double scale = 0.0;
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          scale = std::abs(p) + std::abs(q) + std::abs(r);
          if (scale == 0.0) continue;
          p /= scale;
          q /= scale;
          r /= scale;
        }
        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k != m) {
          h(k, k - 1) = -s * scale;
        } else if (l != m) {
          h(k, k - 1) = -h(k, k - 1);
        }
        p += s;
        const double px = p / s;
        const double py = q / s;
        const double pz = r / s;
        q /= p;
        r /= p;
        if (!notlast) {
          for (int j = k; j < n; ++j) {
            const double f = h(k, j) + q * h(k + 1, j);
            h(k, j) -= f * px;
            h(k + 1, j) -= f * py;
          }
          const int imax = std::min(en, k + 3);
          for (int i = 0; i <= imax; ++i) {
            const double f = px * h(i, k) + py * h(i, k + 1);
            h(i, k) -= f;
            h(i, k + 1) -= f * q;
          }
        } else {
          for (int j = k; j < n; ++j) {
            const double f = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
            h(k, j) -= f * px;
            h(k + 1, j) -= f * py;
            h(k + 2, j) -= f * pz;
          }
          const int imax = std::min(en, k + 3);
          for (int i = 0; i <= imax; ++i) {
            const double f = px * h(i, k) + py * h(i, k + 1) + pz * h(i, k + 2);
            h(i, k) -= f;
            h(i, k + 1) -= f * q;
            h(i, k + 2) -= f * r;
          }
        }
      }
    }
  }
  return w;
}

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<std::complex<double>> eigenvalues_uncertified(const Matrix& a, const Tolerances& tol) {
  require_square(a, "eigenvalues");
  if (!a.all_finite()) throw std::invalid_argument("eigenvalues: entries must be finite");
  const std::size_t n = a.rows();
  if (n == 1) return {std::complex<double>(a(0, 0), 0.0)};
  Matrix work = a;
  balance_in_place(work);
  hessenberg_in_place(work);
  auto vals = hqr_eigenvalues(std::move(work), tol.qr_iteration_budget_per_n * static_cast<int>(n));
  std::sort(vals.begin(), vals.end(), complex_less);
  return vals;
}

double shifted_min_singular_value(const Matrix& a, std::complex<double> lambda) {
  require_square(a, "shifted_min_singular_value");
  const std::size_t n = a.rows();
  const double re = lambda.real(), im = lambda.imag();
  // Real embedding of A - lambda I: [[A - re I, im I], [-im I, A - re I]].
  // Its singular values are those of the complex shift, each doubled.
  Matrix b(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b(i, j) = a(i, j);
      b(n + i, n + j) = a(i, j);
    }
    b(i, i) -= re;
    b(n + i, n + i) -= re;
    b(i, n + i) = im;
    b(n + i, i) = -im;
  }
  LuFactorization lu(std::move(b), /*shift_zero_pivots=*/true);
  const std::size_t m = 2 * n;
  std::vector<double> x(m);
  for (std::size_t j = 0; j < m; ++j) x[j] = std::sin(1.0 + 0.7 * static_cast<double>(j));
  double xn = euclidean_norm(x);
  for (double& v : x) v /= xn;

  double sigma = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    std::vector<double> y = lu.solve_transposed(x);
    std::vector<double> z = lu.solve(std::move(y));
    const double nu = euclidean_norm(z);
    if (!std::isfinite(nu)) return 0.0;
    if (nu == 0.0) return sigma == std::numeric_limits<double>::infinity() ? 0.0 : sigma;
    const double estimate = 1.0 / std::sqrt(nu);
    const bool converged = std::abs(estimate - sigma) <= 1e-6 * estimate;
    sigma = estimate;
    if (converged || sigma == 0.0) break;
    for (std::size_t j = 0; j < m; ++j) x[j] = z[j] / nu;
  }
  return sigma;
}

Spectrum eigenvalues(const Matrix& a, const Tolerances& tol) {
  Spectrum spec;
  spec.eigenvalues = eigenvalues_uncertified(a, tol);
  spec.residuals.reserve(spec.eigenvalues.size());
  double rho = 0.0;
  for (const auto& lambda : spec.eigenvalues) {
    spec.residuals.push_back(shifted_min_singular_value(a, lambda));
    rho = std::max(rho, std::abs(lambda));
  }
  spec.spectral_radius = rho;
  return spec;
}

double spectral_radius(const Matrix& a, const Tolerances& tol) {
  double rho = 0.0;
  for (const auto& lambda : eigenvalues_uncertified(a, tol)) rho = std::max(rho, std::abs(lambda));
  return rho;
}

std::vector<double> symmetric_eigenvalues(const Matrix& s, const Tolerances& tol) {
  require_symmetric(s, tol.symmetry_tolerance, "symmetric_eigenvalues");
  Matrix a = symmetric_part(s);  // work on an exactly symmetric copy
  const std::size_t n = a.rows();
  if (n == 1) return {a(0, 0)};

  const double target = tol.jacobi_tolerance * a.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= target) {
      converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double apq = a(i, j);
        if (apq == 0.0) continue;
        const double diff = a(j, j) - a(i, i);
        double tan_phi;
        if (std::abs(diff) > 2e150 * std::abs(apq)) {  // theta^2 would overflow
          tan_phi = apq / diff;
        } else {
          const double theta = 0.5 * diff / apq;
          tan_phi = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) tan_phi = -tan_phi;
        }
        const double c = 1.0 / std::sqrt(1.0 + tan_phi * tan_phi);
        const double sn = tan_phi * c;
        const double tau = sn / (1.0 + c);
        const double h = tan_phi * apq;
        a(i, i) -= h;
        a(j, j) += h;
        a(i, j) = 0.0;
        a(j, i) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          const double g = a(k, i);
          const double v = a(k, j);
          a(k, i) = g - sn * (v + g * tau);
          a(k, j) = v + sn * (g - v * tau);
          a(i, k) = a(k, i);
          a(j, k) = a(k, j);
        }
      }
    }
  }
  if (!converged) {
    // Final check: the sweep loop may have finished exactly at convergence.
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) > target) {
      throw numerical_error("symmetric_eigenvalues: Jacobi sweeps exhausted before convergence");
    }
  }
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  std::sort(diag.begin(), diag.end());
  return diag;
}

double operator_norm(const Matrix& a, const Tolerances& tol) {
  if (a.empty()) throw std::invalid_argument("operator_norm: empty matrix");
  const Matrix gram = a.transposed() * a;
  const std::vector<double> lam = symmetric_eigenvalues(gram, tol);
  const double top = lam.empty() ? 0.0 : lam.back();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace schurlab
