#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "schurlab/config.hpp"

namespace schurlab {

// Dense real matrix, row-major storage.  Values are treated as immutable
// once constructed; every operation in the library is a pure function.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}
  // Validates entry count and finiteness.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  // Row-by-row literal, e.g. Matrix{{1, 2}, {3, 4}}.  Rejects ragged rows.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<double>& entries() const { return entries_; }

  Matrix transposed() const;
  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  double one_norm() const;  // max absolute column sum
  bool all_finite() const;
  // ||S - S^t||_F <= relative_tolerance * ||S||_F (zero matrix counts as symmetric).
  bool is_symmetric(double relative_tolerance) const;
  double asymmetry() const;  // ||S - S^t||_F

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);
bool operator==(const Matrix& a, const Matrix& b);

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);

Matrix symmetric_part(const Matrix& a);        // (A + A^t) / 2
Matrix skew_part(const Matrix& a);             // (A - A^t) / 2

double euclidean_norm(const std::vector<double>& x);
double max_abs_difference(const Matrix& a, const Matrix& b);

// Precondition helpers; `where` names the operation for the error message.
void require_square(const Matrix& a, const char* where);
void require_same_shape(const Matrix& a, const Matrix& b, const char* where);
void require_symmetric(const Matrix& s, double relative_tolerance, const char* where);

}  // namespace schurlab
