#include <doctest.h>

#include <cmath>
#include <complex>

#include "schurlab/eigen.hpp"
#include "schurlab/kron.hpp"
#include "schurlab/matmap.hpp"
#include "schurlab/random.hpp"
#include "schurlab/solve.hpp"

using namespace schurlab;

namespace {

// X -> M X N that moves entry (i, j) to (r, c) with a weight.
MapSpec entry_mover(std::size_t i, std::size_t j, std::size_t r, std::size_t c, double w) {
  Matrix left(2, 2), right(2, 2);
  left(r, i) = 1.0;
  right(j, c) = w;
  return MapSpec::left_right(left, right);
}

MapSpec eg_2_4_map() {
  return MapSpec::scale(0.25, MapSpec::sum({
                                  entry_mover(0, 0, 0, 0, 1.0),
                                  entry_mover(0, 1, 0, 1, 1.0),
                                  entry_mover(1, 1, 1, 0, 2.0),
                                  entry_mover(1, 0, 1, 1, -2.0),
                              }));
}

MapSpec eg_2_5_map() {
  return MapSpec::sum({entry_mover(0, 1, 0, 0, 1.0), entry_mover(1, 0, 0, 1, 1.0)});
}

MapSpec eg_2_6_map() {
  return MapSpec::sum({entry_mover(0, 1, 0, 0, 1.0), entry_mover(1, 0, 0, 1, 2.0)});
}

MapSpec random_spec(Prng& rng, std::size_t n, int depth) {
  const std::uint64_t pick = rng.next_u64() % (depth > 0 ? 8 : 5);
  switch (pick) {
    case 0:
      return MapSpec::left_right(random_gaussian_matrix(rng, n, n),
                                 random_gaussian_matrix(rng, n, n));
    case 1:
      return MapSpec::congruence(random_gaussian_matrix(rng, n, n));
    case 2:
      // keep similarity parameters well conditioned
      return MapSpec::similarity(Matrix::identity(n) + 0.3 * random_gaussian_matrix(rng, n, n));
    case 3:
      return MapSpec::transpose(n);
    case 4:
      return MapSpec::trace_shift(rng.next_uniform(-0.4, 0.4), rng.next_uniform(0.2, 1.0),
                                  Matrix::identity(n) + 0.3 * random_gaussian_matrix(rng, n, n));
    case 5:
      return MapSpec::scale(rng.next_uniform(-2.0, 2.0), random_spec(rng, n, depth - 1));
    case 6:
      return MapSpec::sum({random_spec(rng, n, depth - 1), random_spec(rng, n, depth - 1)});
    default:
      return MapSpec::compose({random_spec(rng, n, depth - 1), random_spec(rng, n, depth - 1)});
  }
}

}  // namespace

TEST_CASE("similarity by the identity builds the identity rep") {
  const MatrixMap id = build(MapSpec::similarity(Matrix::identity(3)));
  CHECK(max_abs_difference(id.rep, Matrix::identity(9)) < 1e-14);
  CHECK(id.n == 3);
  CHECK(id.subspace == Subspace::full);
}

TEST_CASE("left multiplication matches the direct product") {
  const Matrix m{{0.79323, 0}, {0, -0.24866}};
  const MatrixMap lm = build(MapSpec::left_right(m, Matrix::identity(2)));
  Prng rng(211);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_gaussian_matrix(rng, 2, 2);
    CHECK(max_abs_difference(apply(lm, a), m * a) < 1e-12);
  }
}

TEST_CASE("congruence by diag(2,3) is diagonal in vec coordinates") {
  const MatrixMap c = build(MapSpec::congruence(Matrix{{2, 0}, {0, 3}}));
  const Matrix expected{{4, 0, 0, 0}, {0, 6, 0, 0}, {0, 0, 6, 0}, {0, 0, 0, 9}};
  CHECK(max_abs_difference(c.rep, expected) == 0.0);
}

TEST_CASE("apply: spec examples") {
  const MatrixMap id = build(MapSpec::similarity(Matrix::identity(2)));
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(max_abs_difference(apply(id, a), a) < 1e-14);

  // [[a, b], [c, d]] -> [[a, 2b], [c/2, d]] doubles the standard nilpotent.
  const MatrixMap doubler = build(MapSpec::similarity(Matrix{{1, 0}, {0, 0.5}}));
  const Matrix nilpotent{{0, 1}, {0, 0}};
  CHECK(max_abs_difference(apply(doubler, nilpotent), 2.0 * nilpotent) < 1e-14);

  const MatrixMap l26 = build(eg_2_6_map());
  const Matrix input{{0.5, 2}, {0, 0.5}};
  const Matrix expected{{2, 0}, {0, 0}};
  CHECK(max_abs_difference(apply(l26, input), expected) < 1e-14);
}

TEST_CASE("rep-based apply equals the direct formula on random specs") {
  Prng rng(223);
  int done = 0;
  while (done < 100) {
    const std::size_t n = 2 + rng.next_u64() % 3;
    const MapSpec spec = random_spec(rng, n, 2);
    MatrixMap map;
    try {
      map = build(spec);
    } catch (const numerical_error&) {
      continue;  // ill-conditioned similarity parameter drawn; skip
    }
    const Matrix x = random_gaussian_matrix(rng, n, n);
    const Matrix via_rep = apply(map, x);
    const Matrix direct = apply_spec(spec, x);
    const double scale = std::max(1.0, direct.frobenius_norm());
    CHECK((via_rep - direct).frobenius_norm() <= 1e-10 * scale);
    ++done;
  }
}

TEST_CASE("compose applies right child first") {
  Prng rng(227);
  const Matrix m = random_gaussian_matrix(rng, 2, 2);
  const MapSpec first = MapSpec::left_right(m, Matrix::identity(2));   // X -> M X
  const MapSpec second = MapSpec::transpose(2);                        // X -> X^t
  const MatrixMap composed = build(MapSpec::compose({second, first}));
  const Matrix x = random_gaussian_matrix(rng, 2, 2);
  CHECK(max_abs_difference(apply(composed, x), (m * x).transposed()) < 1e-12);
}

TEST_CASE("map spectrum: identity, quarter-turn example, congruence law") {
  const MatrixMap id = build(MapSpec::similarity(Matrix::identity(2)));
  for (const auto& lambda : map_spectrum(id).eigenvalues) {
    CHECK(lambda.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lambda.imag() == 0.0);
  }

  const MatrixMap l_prime = build(eg_2_4_map());
  const Spectrum s = map_spectrum(l_prime);
  CHECK(s.spectral_radius == doctest::Approx(0.5).epsilon(1e-9));
  int quarter = 0, imaginary = 0;
  for (const auto& lambda : s.eigenvalues) {
    if (std::abs(lambda - std::complex<double>(0.25, 0.0)) < 1e-9) ++quarter;
    if (std::abs(std::abs(lambda.imag()) - 0.5) < 1e-9 && std::abs(lambda.real()) < 1e-9) ++imaginary;
  }
  CHECK(quarter == 2);
  CHECK(imaginary == 2);

  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  const MatrixMap cong = build(MapSpec::congruence(a));
  CHECK(map_spectral_radius(cong) == doctest::Approx(0.81164).epsilon(1e-3));
}

TEST_CASE("analysis limit is enforced") {
  const MatrixMap big = build(MapSpec::congruence(Matrix::identity(13)));
  CHECK(big.rep_dimension() == 169);
  CHECK_THROWS_AS(map_spectrum(big), std::invalid_argument);
}

TEST_CASE("congruence eigenvalue law") {
  CHECK(congruence_eigenvalue_law_check(Matrix{{2, 0}, {0, 3}}));
  CHECK(congruence_eigenvalue_law_check(Matrix{{0, -1}, {1, 0}}));  // quarter turn
  Prng rng(229);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    CHECK(congruence_eigenvalue_law_check(random_gaussian_matrix(rng, n, n)));
  }
}

TEST_CASE("normality with respect to the trace inner product") {
  CHECK(map_is_normal(build(MapSpec::similarity(Matrix::identity(2)))));
  CHECK(map_is_normal(build(eg_2_4_map())));
  CHECK_FALSE(map_is_normal(build(eg_2_6_map())));
}

TEST_CASE("map inversion") {
  const MatrixMap id = build(MapSpec::similarity(Matrix::identity(2)));
  CHECK(max_abs_difference(map_inverse(id).rep, id.rep) < 1e-12);

  Prng rng(233);
  const Matrix t = Matrix::identity(3) + 0.4 * random_gaussian_matrix(rng, 3, 3);
  const MatrixMap fwd = build(MapSpec::similarity(t));
  const MatrixMap inv = map_inverse(fwd);
  const MatrixMap round_trip = map_compose(inv, fwd);
  CHECK(max_abs_difference(round_trip.rep, Matrix::identity(9)) < 1e-8);
  // The inverse of a similarity is the similarity by the inverse parameter.
  const MatrixMap by_inverse = build(MapSpec::similarity(inverse(t)));
  CHECK(max_abs_difference(inv.rep, by_inverse.rep) < 1e-8);

  CHECK_THROWS_AS(map_inverse(build(eg_2_5_map())), numerical_error);
}

TEST_CASE("restriction to the symmetric subspace") {
  const MatrixMap id = build(MapSpec::similarity(Matrix::identity(2)));
  const MatrixMap rid = restrict_symmetric(id);
  CHECK(rid.rep_dimension() == 3);
  CHECK(max_abs_difference(rid.rep, Matrix::identity(3)) < 1e-14);
  CHECK(rid.subspace == Subspace::symmetric);

  Prng rng(239);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 3;
    const Matrix q = random_orthogonal(rng, n);
    const MatrixMap restricted = restrict_symmetric(build(MapSpec::congruence(q)));
    const Matrix gram = restricted.rep.transposed() * restricted.rep;
    CHECK(max_abs_difference(gram, Matrix::identity(svec_length(n))) < 1e-8);
    // All singular values are 1.
    const auto gram_eigs = symmetric_eigenvalues(gram);
    CHECK(gram_eigs.front() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(gram_eigs.back() == doctest::Approx(1.0).epsilon(1e-8));
  }

  // Generic left-right maps do not preserve symmetry.
  const Matrix m = random_gaussian_matrix(rng, 2, 2);
  const Matrix n_mat = random_gaussian_matrix(rng, 2, 2);
  CHECK_THROWS_AS(restrict_symmetric(build(MapSpec::left_right(m, n_mat))),
                  std::invalid_argument);
}

TEST_CASE("restricted symmetric apply matches the full-space action") {
  Prng rng(241);
  const Matrix q = random_orthogonal(rng, 3);
  const MatrixMap full = build(MapSpec::congruence(q));
  const MatrixMap restricted = restrict_symmetric(full);
  const Matrix s = symmetric_part(random_gaussian_matrix(rng, 3, 3));
  CHECK(max_abs_difference(apply(restricted, s), apply(full, s)) < 1e-10);
}

TEST_CASE("similarity by an orthogonal matrix has unit spectral radius") {
  Prng rng(251);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 3;
    const Matrix q = random_orthogonal(rng, n);
    CHECK(map_spectral_radius(build(MapSpec::similarity(q))) ==
          doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("similarity spectrum follows the eigenvalue-ratio law for generic T") {
  // Eigenvalues of the rep are lambda_i(T) / lambda_j(T); for T = diag(2, 1)
  // that multiset is {1, 1, 2, 0.5}, so the operator radius exceeds 1 even
  // though conjugation preserves every spectrum it acts on.
  const MatrixMap sim = build(MapSpec::similarity(Matrix{{2, 0}, {0, 1}}));
  auto eigs = map_spectrum(sim).eigenvalues;
  REQUIRE(eigs.size() == 4);
  CHECK(std::abs(eigs[0] - std::complex<double>(0.5, 0.0)) < 1e-9);
  CHECK(std::abs(eigs[1] - std::complex<double>(1.0, 0.0)) < 1e-9);
  CHECK(std::abs(eigs[2] - std::complex<double>(1.0, 0.0)) < 1e-9);
  CHECK(std::abs(eigs[3] - std::complex<double>(2.0, 0.0)) < 1e-9);
  CHECK(map_spectral_radius(sim) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("Frobenius-induced operator norm") {
  CHECK(frobenius_operator_norm(build(MapSpec::similarity(Matrix::identity(2)))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frobenius_operator_norm(build(eg_2_5_map())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frobenius_operator_norm(build(eg_2_6_map())) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("trace-shift rep matches the defining formula") {
  Prng rng(257);
  const std::size_t n = 3;
  const Matrix s = Matrix::identity(n) + 0.3 * random_gaussian_matrix(rng, n, n);
  const double alpha = 0.2, beta = 0.7;
  const MatrixMap map = build(MapSpec::trace_shift(alpha, beta, s));
  const Matrix s_inv = inverse(s);
  for (int t = 0; t < 10; ++t) {
    const Matrix x = random_gaussian_matrix(rng, n, n);
    Matrix expected = beta * (s_inv * x * s);
    for (std::size_t i = 0; i < n; ++i) expected(i, i) += alpha * x.trace();
    CHECK(max_abs_difference(apply(map, x), expected) < 1e-10);
  }
}

TEST_CASE("transpose nodes need an explicit dimension") {
  CHECK_THROWS_AS(build(MapSpec::transpose(0)), std::invalid_argument);
  const MatrixMap tr = build(MapSpec::transpose(3));
  CHECK(max_abs_difference(tr.rep, commutation_matrix(3)) == 0.0);
  const MatrixMap twice = build(MapSpec::compose({MapSpec::transpose(3), MapSpec::transpose(3)}));
  CHECK(max_abs_difference(twice.rep, Matrix::identity(9)) == 0.0);
}

TEST_CASE("ill-conditioned similarity parameters are refused") {
  Matrix nearly_singular{{1, 0}, {0, 1e-14}};
  CHECK_THROWS_AS(build(MapSpec::similarity(nearly_singular)), numerical_error);
}

TEST_CASE("dimension conflicts between siblings are rejected") {
  CHECK_THROWS_AS(build(MapSpec::sum({MapSpec::transpose(2), MapSpec::transpose(3)})),
                  std::invalid_argument);
}
