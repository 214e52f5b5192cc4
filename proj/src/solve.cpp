#include "schurlab/solve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace schurlab {

LuFactorization::LuFactorization(Matrix a, bool shift_zero_pivots) : lu_(std::move(a)) {
  require_square(lu_, "LuFactorization");
  const std::size_t n = lu_.rows();
  swaps_.resize(n);
  const double singular_threshold =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * lu_.max_abs();
  smallest_pivot_ = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    double pivot_mag = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = std::abs(lu_(i, k));
      if (m > pivot_mag) {
        pivot_mag = m;
        pivot_row = i;
      }
    }
    swaps_[k] = pivot_row;
    if (pivot_row != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot_row, j));
    }
    if (pivot_mag <= singular_threshold) {
      if (!shift_zero_pivots) {
        throw numerical_error("solve: matrix is singular to working precision (pivot magnitude " +
                              std::to_string(pivot_mag) + ")");
      }
      const double floor = std::max(singular_threshold, std::numeric_limits<double>::min());
      lu_(k, k) = lu_(k, k) < 0.0 ? -floor : floor;
      pivot_mag = floor;
    }
    smallest_pivot_ = std::min(smallest_pivot_, pivot_mag);
    const double inv_pivot = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) * inv_pivot;
      lu_(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::vector<double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("LuFactorization::solve: length mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    if (swaps_[k] != k) std::swap(b[k], b[swaps_[k]]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * b[j];
    b[i] = s;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * b[j];
    b[ii] = s / lu_(ii, ii);
  }
  return b;
}

std::vector<double> LuFactorization::solve_transposed(std::vector<double> b) const {
  // A = P^t L U, so A^t x = b becomes U^t L^t (P x) = b.
  const std::size_t n = size();
  if (b.size() != n) throw std::invalid_argument("LuFactorization::solve_transposed: length mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * b[j];
    b[i] = s / lu_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(j, ii) * b[j];
    b[ii] = s;
  }
  for (std::size_t kk = n; kk-- > 0;) {
    if (swaps_[kk] != kk) std::swap(b[kk], b[swaps_[kk]]);
  }
  return b;
}

std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b,
                                 const Tolerances& tol) {
  (void)tol;
  require_square(a, "solve_linear");
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: length mismatch");
  LuFactorization lu(a);
  std::vector<double> x = lu.solve(b);
  // One refinement step tightens the residual at negligible cost.
  std::vector<double> r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const std::vector<double> dx = lu.solve(r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

Matrix inverse(const Matrix& a, const Tolerances& tol) {
  (void)tol;
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  LuFactorization lu(a);
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const std::vector<double> col = lu.solve(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double condition_estimate(const Matrix& a) {
  try {
    const Matrix inv = inverse(a);
    return a.one_norm() * inv.one_norm();
  } catch (const numerical_error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::size_t rank(const Matrix& a, double relative_tolerance) {
  Matrix work = a;
  const std::size_t m = work.rows(), n = work.cols();
  const double threshold = relative_tolerance * std::max(1.0, work.max_abs());
  std::size_t rank_count = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pivot = row;
    for (std::size_t i = row + 1; i < m; ++i) {
      if (std::abs(work(i, col)) > std::abs(work(pivot, col))) pivot = i;
    }
    if (std::abs(work(pivot, col)) <= threshold) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work(row, j), work(pivot, j));
    }
    for (std::size_t i = row + 1; i < m; ++i) {
      const double factor = work(i, col) / work(row, col);
      if (factor == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) work(i, j) -= factor * work(row, j);
    }
    ++rank_count;
    ++row;
  }
  return rank_count;
}

}  // namespace schurlab
