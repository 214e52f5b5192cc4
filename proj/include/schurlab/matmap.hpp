#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schurlab/config.hpp"
#include "schurlab/eigen.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

enum class Subspace { full, symmetric };
const char* to_string(Subspace s);

// Constructor tree for linear maps on n x n matrix space.
//   left_right(M, N):  X -> M X N
//   congruence(A):     X -> A X A^t
//   similarity(T):     X -> T X T^-1
//   transpose:         X -> X^t           (carries an explicit dimension)
//   trace_shift:       X -> alpha trace(X) I + beta S^-1 X S
//   scale(c, child), sum(children), compose(children)
// compose applies right to left: compose([L1, L2])(X) = L1(L2(X)).
struct MapSpec {
  enum class Kind { left_right, congruence, similarity, transpose, trace_shift, scale, sum, compose };

  Kind kind = Kind::similarity;
  Matrix m1;           // left_right M; congruence A; similarity T; trace_shift S
  Matrix m2;           // left_right N
  double alpha = 0.0;  // trace_shift
  double beta = 0.0;   // trace_shift
  double factor = 1.0; // scale
  std::size_t dimension = 0;  // transpose (n is not inferable otherwise)
  std::vector<MapSpec> children;

  static MapSpec left_right(Matrix m, Matrix n);
  static MapSpec congruence(Matrix a);
  static MapSpec similarity(Matrix t);
  static MapSpec transpose(std::size_t n);
  static MapSpec trace_shift(double alpha, double beta, Matrix s);
  static MapSpec scale(double c, MapSpec child);
  static MapSpec sum(std::vector<MapSpec> children);
  static MapSpec compose(std::vector<MapSpec> children);
};

// The dimension n the spec acts on; throws on conflicts between siblings.
std::size_t spec_dimension(const MapSpec& spec);

// Direct formula evaluation of the constructor tree (no representation);
// the independent route the rep-based apply is tested against.
Matrix apply_spec(const MapSpec& spec, const Matrix& x, const Tolerances& tol = {});

// A linear operator on matrix space: n^2 x n^2 representation acting on vec
// coordinates (or n(n+1)/2 x n(n+1)/2 on svec coordinates for the symmetric
// subspace), plus the construction it came from.
struct MatrixMap {
  std::size_t n = 0;
  Subspace subspace = Subspace::full;
  Matrix rep;
  std::string provenance;
  std::optional<MapSpec> spec;  // present for constructor-built maps

  std::size_t rep_dimension() const { return rep.rows(); }
};

MatrixMap build(const MapSpec& spec, const Tolerances& tol = {});

// unvec(rep * vec(A)) (svec on the symmetric subspace; A must be symmetric).
Matrix apply(const MatrixMap& map, const Matrix& a, const Tolerances& tol = {});

// Eigenvalues of the representation; refuses rep dimensions above
// tol.analysis_limit.
Spectrum map_spectrum(const MatrixMap& map, const Tolerances& tol = {});

double map_spectral_radius(const MatrixMap& map, const Tolerances& tol = {});

// Multiset check: eigenvalues of the congruence rep kron(A, A) against all
// pairwise products lambda_i lambda_j, matched greedily within 1e-6.
bool congruence_eigenvalue_law_check(const Matrix& a, const Tolerances& tol = {});

// Normality with respect to the trace inner product on matrix space:
// ||rep rep^t - rep^t rep||_F <= 1e-8 ||rep||_F^2.
bool map_is_normal(const MatrixMap& map, const Tolerances& tol = {});

MatrixMap map_inverse(const MatrixMap& map, const Tolerances& tol = {});

MatrixMap map_compose(const MatrixMap& first_applied_last, const MatrixMap& first_applied,
                      const Tolerances& tol = {});

// Restriction to the symmetric subspace in svec coordinates.  Requires the
// map to send every symmetric basis element to a symmetric matrix.
MatrixMap restrict_symmetric(const MatrixMap& map, const Tolerances& tol = {});

// Operator norm induced by the Frobenius norm on matrix space: the largest
// singular value of the representation.  (The norm induced by the spectral
// norm is not computable from the rep; sampled lower bounds for it live in
// the preserver module.)
double frobenius_operator_norm(const MatrixMap& map, const Tolerances& tol = {});

// The symmetric-matrix basis elements that restrict_symmetric checks against:
// E_ii / 2 and (E_ij + E_ji) / 2 for i < j, each Schur stable.
std::vector<Matrix> symmetric_basis_matrices(std::size_t n);

}  // namespace schurlab
