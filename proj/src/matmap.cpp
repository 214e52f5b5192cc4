#include "schurlab/matmap.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "schurlab/kron.hpp"
#include "schurlab/solve.hpp"

namespace schurlab {

const char* to_string(Subspace s) {
  return s == Subspace::full ? "full" : "symmetric";
}

MapSpec MapSpec::left_right(Matrix m, Matrix n) {
  MapSpec s;
  s.kind = Kind::left_right;
  s.m1 = std::move(m);
  s.m2 = std::move(n);
  return s;
}

MapSpec MapSpec::congruence(Matrix a) {
  MapSpec s;
  s.kind = Kind::congruence;
  s.m1 = std::move(a);
  return s;
}

MapSpec MapSpec::similarity(Matrix t) {
  MapSpec s;
  s.kind = Kind::similarity;
  s.m1 = std::move(t);
  return s;
}

MapSpec MapSpec::transpose(std::size_t n) {
  MapSpec s;
  s.kind = Kind::transpose;
  s.dimension = n;
  return s;
}

MapSpec MapSpec::trace_shift(double alpha, double beta, Matrix sm) {
  MapSpec s;
  s.kind = Kind::trace_shift;
  s.alpha = alpha;
  s.beta = beta;
  s.m1 = std::move(sm);
  return s;
}

MapSpec MapSpec::scale(double c, MapSpec child) {
  MapSpec s;
  s.kind = Kind::scale;
  s.factor = c;
  s.children.push_back(std::move(child));
  return s;
}

MapSpec MapSpec::sum(std::vector<MapSpec> children) {
  if (children.empty()) throw std::invalid_argument("MapSpec::sum: at least one child required");
  MapSpec s;
  s.kind = Kind::sum;
  s.children = std::move(children);
  return s;
}

MapSpec MapSpec::compose(std::vector<MapSpec> children) {
  if (children.empty()) throw std::invalid_argument("MapSpec::compose: at least one child required");
  MapSpec s;
  s.kind = Kind::compose;
  s.children = std::move(children);
  return s;
}

namespace {

void merge_dimension(std::size_t& n, std::size_t candidate) {
  if (candidate == 0) return;
  if (n == 0) {
    n = candidate;
  } else if (n != candidate) {
    throw std::invalid_argument("MapSpec: embedded matrices disagree on dimension");
  }
}

std::size_t spec_dimension_or_zero(const MapSpec& spec) {
  std::size_t n = 0;
  switch (spec.kind) {
    case MapSpec::Kind::left_right:
      require_square(spec.m1, "MapSpec left_right (M)");
      require_square(spec.m2, "MapSpec left_right (N)");
      merge_dimension(n, spec.m1.rows());
      merge_dimension(n, spec.m2.rows());
      break;
    case MapSpec::Kind::congruence:
      require_square(spec.m1, "MapSpec congruence");
      merge_dimension(n, spec.m1.rows());
      break;
    case MapSpec::Kind::similarity:
      require_square(spec.m1, "MapSpec similarity");
      merge_dimension(n, spec.m1.rows());
      break;
    case MapSpec::Kind::trace_shift:
      require_square(spec.m1, "MapSpec trace_shift");
      merge_dimension(n, spec.m1.rows());
      break;
    case MapSpec::Kind::transpose:
      merge_dimension(n, spec.dimension);
      break;
    case MapSpec::Kind::scale:
    case MapSpec::Kind::sum:
    case MapSpec::Kind::compose:
      for (const MapSpec& child : spec.children) merge_dimension(n, spec_dimension_or_zero(child));
      break;
  }
  return n;
}

std::string describe(const MapSpec& spec) {
  switch (spec.kind) {
    case MapSpec::Kind::left_right: return "leftRight";
    case MapSpec::Kind::congruence: return "congruence";
    case MapSpec::Kind::similarity: return "similarity";
    case MapSpec::Kind::transpose: return "transpose";
    case MapSpec::Kind::trace_shift: return "traceShift";
    case MapSpec::Kind::scale: return "scale(" + describe(spec.children.front()) + ")";
    case MapSpec::Kind::sum: {
      std::string out = "sum(";
      for (std::size_t i = 0; i < spec.children.size(); ++i) {
        if (i) out += ", ";
        out += describe(spec.children[i]);
      }
      return out + ")";
    }
    case MapSpec::Kind::compose: {
      std::string out = "compose(";
      for (std::size_t i = 0; i < spec.children.size(); ++i) {
        if (i) out += ", ";
        out += describe(spec.children[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

Matrix guarded_inverse(const Matrix& m, const char* what, const Tolerances& tol) {
  const double cond = condition_estimate(m);
  if (!(cond <= tol.condition_limit)) {
    throw numerical_error(std::string(what) +
                          ": matrix is numerically singular (condition estimate above limit)");
  }
  return inverse(m, tol);
}

Matrix build_rep(const MapSpec& spec, std::size_t n, const Tolerances& tol) {
  switch (spec.kind) {
    case MapSpec::Kind::left_right:
      return kron(spec.m2.transposed(), spec.m1);
    case MapSpec::Kind::congruence:
      return kron(spec.m1, spec.m1);
    case MapSpec::Kind::similarity: {
      const Matrix t_inv = guarded_inverse(spec.m1, "similarity", tol);
      return kron(t_inv.transposed(), spec.m1);
    }
    case MapSpec::Kind::transpose:
      return commutation_matrix(n);
    case MapSpec::Kind::trace_shift: {
      const Matrix s_inv = guarded_inverse(spec.m1, "traceShift", tol);
      const std::vector<double> vec_i = vec(Matrix::identity(n));
      Matrix rep = kron(spec.m1.transposed(), s_inv);  // X -> S^-1 X S
      rep *= spec.beta;
      for (std::size_t i = 0; i < n * n; ++i)
        for (std::size_t j = 0; j < n * n; ++j) rep(i, j) += spec.alpha * vec_i[i] * vec_i[j];
      return rep;
    }
    case MapSpec::Kind::scale: {
      Matrix rep = build_rep(spec.children.front(), n, tol);
      rep *= spec.factor;
      return rep;
    }
    case MapSpec::Kind::sum: {
      Matrix rep = build_rep(spec.children.front(), n, tol);
      for (std::size_t i = 1; i < spec.children.size(); ++i) {
        rep += build_rep(spec.children[i], n, tol);
      }
      return rep;
    }
    case MapSpec::Kind::compose: {
      Matrix rep = build_rep(spec.children.front(), n, tol);
      for (std::size_t i = 1; i < spec.children.size(); ++i) {
        rep = rep * build_rep(spec.children[i], n, tol);
      }
      return rep;
    }
  }
  throw std::logic_error("build_rep: unreachable");
}

}  // namespace

std::size_t spec_dimension(const MapSpec& spec) {
  const std::size_t n = spec_dimension_or_zero(spec);
  if (n == 0) {
    throw std::invalid_argument(
        "MapSpec: dimension is not inferable (bare transpose nodes need an explicit n)");
  }
  return n;
}

Matrix apply_spec(const MapSpec& spec, const Matrix& x, const Tolerances& tol) {
  switch (spec.kind) {
    case MapSpec::Kind::left_right:
      return spec.m1 * x * spec.m2;
    case MapSpec::Kind::congruence:
      return spec.m1 * x * spec.m1.transposed();
    case MapSpec::Kind::similarity:
      return spec.m1 * x * guarded_inverse(spec.m1, "similarity", tol);
    case MapSpec::Kind::transpose:
      return x.transposed();
    case MapSpec::Kind::trace_shift: {
      const Matrix s_inv = guarded_inverse(spec.m1, "traceShift", tol);
      Matrix out = s_inv * x * spec.m1;
      out *= spec.beta;
      const double shift = spec.alpha * x.trace();
      for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += shift;
      return out;
    }
    case MapSpec::Kind::scale:
      return spec.factor * apply_spec(spec.children.front(), x, tol);
    case MapSpec::Kind::sum: {
      Matrix out = apply_spec(spec.children.front(), x, tol);
      for (std::size_t i = 1; i < spec.children.size(); ++i) {
        out += apply_spec(spec.children[i], x, tol);
      }
      return out;
    }
    case MapSpec::Kind::compose: {
      Matrix out = x;
      for (std::size_t i = spec.children.size(); i-- > 0;) {
        out = apply_spec(spec.children[i], out, tol);
      }
      return out;
    }
  }
  throw std::logic_error("apply_spec: unreachable");
}

MatrixMap build(const MapSpec& spec, const Tolerances& tol) {
  MatrixMap map;
  map.n = spec_dimension(spec);
  map.subspace = Subspace::full;
  map.rep = build_rep(spec, map.n, tol);
  map.provenance = describe(spec);
  map.spec = spec;
  return map;
}

Matrix apply(const MatrixMap& map, const Matrix& a, const Tolerances& tol) {
  require_square(a, "apply");
  if (a.rows() != map.n) {
    throw std::invalid_argument("apply: input dimension does not match the map");
  }
  if (map.subspace == Subspace::symmetric) {
    return unsvec(map.rep * svec(a, tol), map.n);
  }
  return unvec(map.rep * vec(a), map.n);
}

Spectrum map_spectrum(const MatrixMap& map, const Tolerances& tol) {
  if (map.rep_dimension() > tol.analysis_limit) {
    throw std::invalid_argument(
        "map_spectrum: representation dimension " + std::to_string(map.rep_dimension()) +
        " exceeds the analysis limit " + std::to_string(tol.analysis_limit));
  }
  return eigenvalues(map.rep, tol);
}

double map_spectral_radius(const MatrixMap& map, const Tolerances& tol) {
  if (map.rep_dimension() > tol.analysis_limit) {
    throw std::invalid_argument("map_spectral_radius: representation exceeds the analysis limit");
  }
  return spectral_radius(map.rep, tol);
}

bool congruence_eigenvalue_law_check(const Matrix& a, const Tolerances& tol) {
  require_square(a, "congruence_eigenvalue_law_check");
  if (a.rows() > 8) {
    throw std::invalid_argument("congruence_eigenvalue_law_check: n <= 8 required");
  }
  const std::vector<std::complex<double>> lambda = eigenvalues_uncertified(a, tol);
  const std::vector<std::complex<double>> rep_eigs =
      eigenvalues_uncertified(kron(a, a), tol);

  std::vector<std::complex<double>> products;
  products.reserve(lambda.size() * lambda.size());
  for (const auto& li : lambda)
    for (const auto& lj : lambda) products.push_back(li * lj);

  std::vector<bool> used(rep_eigs.size(), false);
  for (const auto& p : products) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t k = 0; k < rep_eigs.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(rep_eigs[k] - p);
      if (d < best) {
        best = d;
        best_index = k;
      }
    }
    if (best > 1e-6) return false;
    used[best_index] = true;
  }
  return true;
}

bool map_is_normal(const MatrixMap& map, const Tolerances& tol) {
  (void)tol;
  const Matrix& rep = map.rep;
  const Matrix rt = rep.transposed();
  const double commutator = (rep * rt - rt * rep).frobenius_norm();
  const double scale = rep.frobenius_norm();
  return commutator <= 1e-8 * scale * scale;
}

MatrixMap map_inverse(const MatrixMap& map, const Tolerances& tol) {
  const double cond = condition_estimate(map.rep);
  if (!(cond <= tol.condition_limit)) {
    throw numerical_error("map_inverse: representation is singular to working precision");
  }
  MatrixMap inv;
  inv.n = map.n;
  inv.subspace = map.subspace;
  inv.rep = inverse(map.rep, tol);
  inv.provenance = "inverse of " + map.provenance;
  return inv;
}

MatrixMap map_compose(const MatrixMap& outer, const MatrixMap& inner, const Tolerances& tol) {
  (void)tol;
  if (outer.n != inner.n || outer.subspace != inner.subspace) {
    throw std::invalid_argument("map_compose: maps act on different spaces");
  }
  MatrixMap out;
  out.n = outer.n;
  out.subspace = outer.subspace;
  out.rep = outer.rep * inner.rep;
  out.provenance = "compose(" + outer.provenance + ", " + inner.provenance + ")";
  return out;
}

std::vector<Matrix> symmetric_basis_matrices(std::size_t n) {
  std::vector<Matrix> basis;
  basis.reserve(svec_length(n));
  for (std::size_t i = 0; i < n; ++i) {
    Matrix e(n, n);
    e(i, i) = 0.5;
    basis.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix e(n, n);
      e(i, j) = 0.5;
      e(j, i) = 0.5;
      basis.push_back(std::move(e));
    }
  return basis;
}

namespace {

// Names the k-th element of the symmetric basis: E(i,i)/2 first, then
// (E(i,j)+E(j,i))/2 for i < j in row order.
std::string basis_element_name(std::size_t n, std::size_t k) {
  if (k < n) return "E(" + std::to_string(k) + "," + std::to_string(k) + ")/2";
  std::size_t off = k - n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (off == 0) {
        return "(E(" + std::to_string(i) + "," + std::to_string(j) + ")+E(" + std::to_string(j) +
               "," + std::to_string(i) + "))/2";
      }
      --off;
    }
  return "?";
}

}  // namespace

MatrixMap restrict_symmetric(const MatrixMap& map, const Tolerances& tol) {
  if (map.subspace != Subspace::full) {
    throw std::invalid_argument("restrict_symmetric: map is already restricted");
  }
  const std::size_t n = map.n;
  // Symmetry-preservation check on the symmetric basis.
  std::size_t index = 0;
  for (const Matrix& b : symmetric_basis_matrices(n)) {
    const Matrix image = apply(map, b, tol);
    if (image.asymmetry() > 1e-8) {
      throw std::invalid_argument("restrict_symmetric: map does not preserve symmetry on " +
                                  basis_element_name(n, index));
    }
    ++index;
  }
  const Matrix g = svec_embedding(n);
  MatrixMap restricted;
  restricted.n = n;
  restricted.subspace = Subspace::symmetric;
  restricted.rep = g.transposed() * map.rep * g;
  restricted.provenance = "restrict_symmetric(" + map.provenance + ")";
  return restricted;
}

double frobenius_operator_norm(const MatrixMap& map, const Tolerances& tol) {
  return operator_norm(map.rep, tol);
}

}  // namespace schurlab
