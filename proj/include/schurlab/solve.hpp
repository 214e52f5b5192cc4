#pragma once

#include <cstddef>
#include <vector>

#include "schurlab/matrix.hpp"

namespace schurlab {

// LU factorization with partial pivoting.  `shift_zero_pivots` replaces a
// singular-to-working-precision pivot with a tiny stand-in instead of
// throwing; inverse iteration relies on that mode.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a, bool shift_zero_pivots = false);

  std::size_t size() const { return lu_.rows(); }
  double smallest_pivot() const { return smallest_pivot_; }

  std::vector<double> solve(std::vector<double> b) const;             // A x = b
  std::vector<double> solve_transposed(std::vector<double> b) const;  // A^t x = b

 private:
  Matrix lu_;
  std::vector<std::size_t> swaps_;
  double smallest_pivot_ = 0.0;
};

// x with ||Ax - b|| <= solve_tolerance * (||A||_F ||x|| + ||b||); one step of
// iterative refinement on top of pivoted LU.
std::vector<double> solve_linear(const Matrix& a, const std::vector<double>& b,
                                 const Tolerances& tol = {});

Matrix inverse(const Matrix& a, const Tolerances& tol = {});

// ||A||_1 * ||A^-1||_1; returns +inf when the factorization hits a singular pivot.
double condition_estimate(const Matrix& a);

// Numerical rank by row echelon with a threshold relative to the largest entry.
std::size_t rank(const Matrix& a, double relative_tolerance = 1e-10);

}  // namespace schurlab
