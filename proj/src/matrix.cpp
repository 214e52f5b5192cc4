#include "schurlab/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace schurlab {

namespace {

void check_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Matrix: entries must be finite (no NaN/Inf)");
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("Matrix: entry count does not match rows * cols");
  }
  check_finite(entries_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("Matrix: ragged row in initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_finite(entries_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool Matrix::all_finite() const {
  for (double v : entries_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double Matrix::asymmetry() const {
  if (!is_square()) return frobenius_norm();
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double d = (*this)(i, j) - (*this)(j, i);
      s += 2.0 * d * d;
    }
  return std::sqrt(s);
}

bool Matrix::is_symmetric(double relative_tolerance) const {
  if (!is_square()) return false;
  return asymmetry() <= relative_tolerance * frobenius_norm();
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "Matrix::operator+=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  require_same_shape(*this, rhs, "Matrix::operator-=");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : entries_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator-(const Matrix& a) {
  Matrix r = a;
  return r *= -1.0;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("Matrix product: inner dimensions do not match");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, double s) { return a *= s; }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries();
}

std::vector<double> operator*(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) {
    throw std::invalid_argument("Matrix-vector product: dimension mismatch");
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix symmetric_part(const Matrix& a) {
  require_square(a, "symmetric_part");
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

Matrix skew_part(const Matrix& a) {
  require_square(a, "skew_part");
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) - a(j, i));
  return s;
}

double euclidean_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_difference");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

void require_square(const Matrix& a, const char* where) {
  if (a.empty() || !a.is_square()) {
    throw std::invalid_argument(std::string(where) + ": square nonempty matrix required");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(where) + ": shape mismatch");
  }
}

void require_symmetric(const Matrix& s, double relative_tolerance, const char* where) {
  require_square(s, where);
  if (!s.is_symmetric(relative_tolerance)) {
    throw std::invalid_argument(std::string(where) + ": matrix is not symmetric within tolerance");
  }
}

}  // namespace schurlab
