#pragma once

#include <cstddef>
#include <vector>

#include "schurlab/config.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

// Kronecker product, dimensions (rA*rB) x (cA*cB).
Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization: vec(A)[j*rows + i] = A(i, j), so that
// vec(M X N) = kron(N^t, M) vec(X) holds exactly.
std::vector<double> vec(const Matrix& a);
Matrix unvec(const std::vector<double>& x, std::size_t rows, std::size_t cols);
Matrix unvec(const std::vector<double>& x, std::size_t n);  // square

// The n^2 x n^2 permutation K with K vec(A) = vec(A^t); symmetric, involutory.
Matrix commutation_matrix(std::size_t n);

constexpr std::size_t svec_length(std::size_t n) { return n * (n + 1) / 2; }

// Coordinates on symmetric matrices: upper triangle by columns, off-diagonal
// entries scaled by sqrt(2), so <svec S, svec T> = trace(S T).
std::vector<double> svec(const Matrix& s, const Tolerances& tol = {});
Matrix unsvec(const std::vector<double>& x, std::size_t n);

// n^2 x n(n+1)/2 matrix with orthonormal columns vec(B_k), B_k the svec
// basis; maps svec coordinates into vec coordinates.
Matrix svec_embedding(std::size_t n);

}  // namespace schurlab
