#include "schurlab/preserver.hpp"

#include <cmath>
#include <stdexcept>

#include "schurlab/kron.hpp"
#include "schurlab/random.hpp"
#include "schurlab/solve.hpp"
#include "schurlab/stability.hpp"

namespace schurlab {

namespace {

constexpr double kRhoPreservationTolerance = 1e-6;
constexpr double kCanonicalAgreementTolerance = 1e-8;

}  // namespace

const char* to_string(SampleClass c) {
  switch (c) {
    case SampleClass::general: return "general";
    case SampleClass::symmetric: return "symmetric";
    case SampleClass::normaloid: return "normaloid";
    case SampleClass::nilpotent: return "nilpotent";
  }
  return "?";
}

void SampleConfig::validate() const {
  if (n < 1) throw std::invalid_argument("SampleConfig: n >= 1 required");
  if (trials < 1) throw std::invalid_argument("SampleConfig: trials >= 1 required");
  if (!(band_lo >= 0.0 && band_lo < band_hi && band_hi <= 1.0 - 1e-6)) {
    throw std::invalid_argument(
        "SampleConfig: radius band must satisfy 0 <= lo < hi <= 1 - 1e-6");
  }
}

Matrix sample_stable(const SampleConfig& cfg, std::uint64_t index, const Tolerances& tol) {
  cfg.validate();
  Prng rng = Prng::for_trial(cfg.seed, index);
  const std::size_t n = cfg.n;

  if (cfg.klass == SampleClass::nilpotent) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) a(i, j) = rng.next_normal();
    return a;
  }

  for (int attempt = 0; attempt < 64; ++attempt) {
    Matrix a = random_gaussian_matrix(rng, n, n);
    if (cfg.klass == SampleClass::symmetric || cfg.klass == SampleClass::normaloid) {
      a = symmetric_part(a);
    }
    const double rho = spectral_radius(a, tol);
    if (rho < 1e-12) continue;  // rescaling impossible; redraw
    const double target = rng.next_uniform(cfg.band_lo, cfg.band_hi);
    a *= target / rho;
    return a;
  }
  throw numerical_error("sample_stable: could not draw a matrix with nonzero spectral radius");
}

StableBasis stable_basis(Subspace space, std::size_t n, const Tolerances& tol) {
  (void)tol;
  if (n < 1) throw std::invalid_argument("stable_basis: n >= 1 required");
  StableBasis basis;
  basis.space = space;
  if (space == Subspace::full) {
    for (std::size_t i = 0; i < n; ++i) {
      Matrix e(n, n);
      e(i, i) = 0.5;
      basis.elements.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Matrix e(n, n);
        e(i, j) = 1.0;
        basis.elements.push_back(std::move(e));
      }
  } else {
    basis.elements = symmetric_basis_matrices(n);
  }

  const std::size_t dim = space == Subspace::full ? n * n : svec_length(n);
  Matrix coords(basis.elements.size(), dim);
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    const std::vector<double> row =
        space == Subspace::full ? vec(basis.elements[k]) : svec(basis.elements[k]);
    for (std::size_t j = 0; j < dim; ++j) coords(k, j) = row[j];
  }
  basis.coordinate_rank = rank(coords);
  return basis;
}

namespace {

void check_sampling_compatibility(const MatrixMap& map, const SampleConfig& cfg) {
  if (cfg.n != map.n) {
    throw std::invalid_argument("preserver test: sample dimension does not match the map");
  }
  if (map.subspace == Subspace::symmetric && cfg.klass != SampleClass::symmetric &&
      cfg.klass != SampleClass::normaloid) {
    throw std::invalid_argument(
        "preserver test: a symmetric-subspace map needs symmetric or normaloid samples");
  }
}

}  // namespace

PreserverVerdict test_into_preserver(const MatrixMap& map, const SampleConfig& cfg,
                                     const Tolerances& tol) {
  cfg.validate();
  check_sampling_compatibility(map, cfg);
  PreserverVerdict verdict;
  verdict.seed = cfg.seed;
  for (std::size_t index = 0; index < cfg.trials; ++index) {
    const Matrix a = sample_stable(cfg, index, tol);
    const double rho_a = spectral_radius(a, tol);
    const Matrix b = apply(map, a, tol);
    const double rho_b = spectral_radius(b, tol);
    verdict.trials_run = index + 1;
    if (rho_a <= 1.0 - tol.separation && rho_b >= 1.0 + tol.separation) {
      verdict.counterexample = true;
      verdict.witness = Witness{index, a, b, rho_a, rho_b};
      return verdict;
    }
  }
  verdict.counterexample = false;
  return verdict;
}

OntoVerdict test_onto_preserver(const MatrixMap& map, const SampleConfig& cfg,
                                const Tolerances& tol) {
  OntoVerdict verdict;
  verdict.forward = test_into_preserver(map, cfg, tol);
  MatrixMap inv;
  try {
    inv = map_inverse(map, tol);
  } catch (const numerical_error& err) {
    verdict.singular = true;
    verdict.singular_reason = err.what();
    verdict.onto = false;
    return verdict;
  }
  verdict.backward = test_into_preserver(inv, cfg, tol);
  verdict.onto = !verdict.forward.counterexample && !verdict.backward->counterexample;
  return verdict;
}

RhoPreservationResult test_rho_preservation(const MatrixMap& map, const SampleConfig& cfg,
                                            const Tolerances& tol) {
  cfg.validate();
  check_sampling_compatibility(map, cfg);
  RhoPreservationResult result;
  result.seed = cfg.seed;
  for (std::size_t index = 0; index < cfg.trials; ++index) {
    const Matrix a = sample_stable(cfg, index, tol);
    const double rho_a = spectral_radius(a, tol);
    const double rho_b = spectral_radius(apply(map, a, tol), tol);
    const double deviation = std::abs(rho_b - rho_a) / std::max(rho_a, 1e-12);
    result.max_relative_deviation = std::max(result.max_relative_deviation, deviation);
    result.trials_run = index + 1;
  }
  result.pass = result.max_relative_deviation <= kRhoPreservationTolerance;
  return result;
}

NilpotentPreservationResult test_nilpotent_preservation(const MatrixMap& map,
                                                        const SampleConfig& cfg,
                                                        const Tolerances& tol) {
  cfg.validate();
  if (cfg.klass != SampleClass::nilpotent) {
    throw std::invalid_argument("test_nilpotent_preservation: nilpotent sample class required");
  }
  if (map.subspace != Subspace::full) {
    throw std::invalid_argument("test_nilpotent_preservation: full-space map required");
  }
  check_sampling_compatibility(map, cfg);

  NilpotentPreservationResult result;
  SampleConfig hypothesis_cfg = cfg;
  hypothesis_cfg.klass = SampleClass::general;
  result.into_hypothesis = test_into_preserver(map, hypothesis_cfg, tol);
  result.hypothesis_holds = !result.into_hypothesis.counterexample;

  for (std::size_t index = 0; index < cfg.trials; ++index) {
    const Matrix a = sample_stable(cfg, index, tol);
    const Matrix b = apply(map, a, tol);
    result.trials_run = index + 1;
    if (!is_nilpotent(b, tol)) {
      ++result.violations;
      if (!result.first_violation) {
        result.first_violation =
            Witness{index, a, b, spectral_radius(a, tol), spectral_radius(b, tol)};
      }
    }
  }
  result.pass = !result.hypothesis_holds || result.violations == 0;
  return result;
}

bool jlrsp_condition(double alpha, double beta, std::size_t n) {
  if (n < 1) throw std::invalid_argument("jlrsp_condition: n >= 1 required");
  if (beta == 0.0) return false;
  if (alpha * static_cast<double>(n) + beta == 0.0) return false;
  return (static_cast<double>(n) - 1.0) * std::abs(alpha) + std::abs(beta + alpha) <= 1.0;
}

bool verify_canonical_form(const MatrixMap& map, double c, const Matrix& t,
                           CanonicalFlavor flavor, bool onto, const Tolerances& tol) {
  require_square(t, "verify_canonical_form");
  if (t.rows() != map.n) {
    throw std::invalid_argument("verify_canonical_form: parameter dimension mismatch");
  }
  if (flavor == CanonicalFlavor::orthogonal_congruence) {
    const Matrix gram = t.transposed() * t;
    if ((gram - Matrix::identity(map.n)).frobenius_norm() > 1e-8) {
      throw std::invalid_argument("verify_canonical_form: T is not orthogonal");
    }
    if (onto && std::abs(std::abs(c) - 1.0) > 1e-12) {
      throw std::invalid_argument("verify_canonical_form: congruence flavor needs c in {1, -1}");
    }
  } else if (onto && std::abs(std::abs(c) - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "verify_canonical_form: onto verification needs |c| = 1 for similarity flavors");
  }
  if (flavor == CanonicalFlavor::transpose_similarity && map.subspace == Subspace::symmetric) {
    throw std::invalid_argument(
        "verify_canonical_form: transpose flavor is not defined on the symmetric subspace");
  }

  std::optional<Matrix> t_inverse;
  if (flavor != CanonicalFlavor::orthogonal_congruence) {
    if (condition_estimate(t) > tol.condition_limit) {
      throw numerical_error("verify_canonical_form: T is numerically singular");
    }
    t_inverse = inverse(t, tol);
  }

  const auto candidate = [&](const Matrix& x) {
    switch (flavor) {
      case CanonicalFlavor::similarity:
        return c * (t * x * *t_inverse);
      case CanonicalFlavor::transpose_similarity:
        return c * (t * x.transposed() * *t_inverse);
      case CanonicalFlavor::orthogonal_congruence:
        return c * (t * x * t.transposed());
    }
    throw std::logic_error("verify_canonical_form: unreachable");
  };

  const StableBasis basis = stable_basis(map.subspace, map.n, tol);
  for (const Matrix& b : basis.elements) {
    const Matrix via_map = apply(map, b, tol);
    const Matrix via_candidate = candidate(b);
    const double gap = (via_map - via_candidate).frobenius_norm();
    if (gap > kCanonicalAgreementTolerance * std::max(1.0, via_map.frobenius_norm())) {
      return false;
    }
  }
  return true;
}

}  // namespace schurlab
