#include "schurlab/kron.hpp"

#include <cmath>
#include <stdexcept>

namespace schurlab {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const double av = a(ia, ja);
      if (av == 0.0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          k(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
    }
  return k;
}

std::vector<double> vec(const Matrix& a) {
  std::vector<double> x(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) x[j * a.rows() + i] = a(i, j);
  return x;
}

Matrix unvec(const std::vector<double>& x, std::size_t rows, std::size_t cols) {
  if (x.size() != rows * cols) {
    throw std::invalid_argument("unvec: vector length does not match rows * cols");
  }
  Matrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = x[j * rows + i];
  return a;
}

Matrix unvec(const std::vector<double>& x, std::size_t n) { return unvec(x, n, n); }

Matrix commutation_matrix(std::size_t n) {
  if (n < 1) throw std::invalid_argument("commutation_matrix: n >= 1 required");
  Matrix k(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i * n + j, j * n + i) = 1.0;
  return k;
}

std::vector<double> svec(const Matrix& s, const Tolerances& tol) {
  require_symmetric(s, tol.symmetry_tolerance, "svec");
  const std::size_t n = s.rows();
  const double root2 = std::sqrt(2.0);
  std::vector<double> x;
  x.reserve(svec_length(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      const double v = 0.5 * (s(i, j) + s(j, i));
      x.push_back(i == j ? v : root2 * v);
    }
  return x;
}

Matrix unsvec(const std::vector<double>& x, std::size_t n) {
  if (x.size() != svec_length(n)) {
    throw std::invalid_argument("unsvec: vector length does not match n(n+1)/2");
  }
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  Matrix s(n, n);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i, ++k) {
      if (i == j) {
        s(i, i) = x[k];
      } else {
        s(i, j) = inv_root2 * x[k];
        s(j, i) = s(i, j);
      }
    }
  return s;
}

Matrix svec_embedding(std::size_t n) {
  const std::size_t m = svec_length(n);
  Matrix g(n * n, m);
  std::vector<double> coord(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    coord[k] = 1.0;
    const std::vector<double> column = vec(unsvec(coord, n));
    coord[k] = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) g(i, k) = column[i];
  }
  return g;
}

}  // namespace schurlab
