#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "schurlab/random.hpp"
#include "schurlab/stability.hpp"

using namespace schurlab;

namespace {

Matrix random_stable(Prng& rng, std::size_t n, double lo, double hi) {
  for (;;) {
    Matrix a = random_gaussian_matrix(rng, n, n);
    const double rho = spectral_radius(a);
    if (rho < 1e-12) continue;
    a *= rng.next_uniform(lo, hi) / rho;
    return a;
  }
}

Matrix random_positive_definite(Prng& rng, std::size_t n) {
  const Matrix g = random_gaussian_matrix(rng, n, n);
  Matrix r = g.transposed() * g;
  for (std::size_t i = 0; i < n; ++i) r(i, i) += 0.5;
  return r;
}

}  // namespace

TEST_CASE("verdicts: zero matrix, paper pair, exact circle") {
  CHECK(is_schur_stable(Matrix(3, 3)).verdict == Verdict::stable);

  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  const StabilityReport stable = is_schur_stable(a);
  CHECK(stable.verdict == Verdict::stable);
  CHECK(stable.spectral_radius == doctest::Approx(0.90091).epsilon(1e-4));
  CHECK(stable.margin == doctest::Approx(1.0 - 0.900914).epsilon(1e-4));

  const Matrix m{{0.79323, 0}, {0, -0.24866}};
  const StabilityReport unstable = is_schur_stable(m * a);
  CHECK(unstable.verdict == Verdict::unstable);

  CHECK(is_schur_stable(Matrix::identity(2)).verdict == Verdict::marginal);
  CHECK(is_schur_stable(Matrix{{1.0 + 1e-12}}).verdict == Verdict::marginal);
}

TEST_CASE("2x2 criterion on closed-form cases") {
  const TwoByTwoCriterion zero = schur_2x2(Matrix(2, 2));
  CHECK(zero.stable);
  CHECK(zero.trace == 0.0);
  CHECK(zero.determinant == 0.0);

  const TwoByTwoCriterion paper = schur_2x2(Matrix{{1.17258, 1.35575}, {-0.94256, -0.39761}});
  CHECK(paper.stable);
  CHECK(paper.trace == doctest::Approx(0.77497).epsilon(1e-10));
  CHECK(paper.determinant == doctest::Approx(0.811646).epsilon(1e-5));

  const TwoByTwoCriterion off = schur_2x2(Matrix{{2, 0}, {0, 0}});
  CHECK_FALSE(off.stable);
  CHECK_FALSE(off.trace_condition);

  CHECK_THROWS_AS(schur_2x2(Matrix::identity(3)), std::invalid_argument);
}

TEST_CASE("2x2 criterion agrees with the eigenvalue verdict on 500 random draws") {
  Prng rng(71);
  int tested = 0;
  while (tested < 500) {
    Matrix a(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.next_uniform(-3.0, 3.0);
    const StabilityReport report = is_schur_stable(a);
    if (report.verdict == Verdict::marginal) continue;
    ++tested;
    CHECK(schur_2x2(a).stable == (report.verdict == Verdict::stable));
  }
}

TEST_CASE("Stein solver: closed forms") {
  const SteinSolution trivial = solve_stein(Matrix(2, 2), Matrix::identity(2));
  CHECK(max_abs_difference(trivial.x, Matrix::identity(2)) < 1e-14);
  CHECK(trivial.residual < 1e-14);
  CHECK(trivial.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));

  const SteinSolution scalar = solve_stein(Matrix{{0.5}}, Matrix{{1.0}});
  CHECK(scalar.x(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("Stein solver: positive definite certificate for the paper matrix") {
  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  const SteinSolution sol = solve_stein(a, Matrix::identity(2));
  CHECK(sol.min_eigenvalue > 0.0);
  CHECK(sol.residual <= Tolerances{}.stein_tolerance * (1.0 + std::sqrt(2.0)));
  CHECK(sol.x.is_symmetric(1e-12));

  // Independent route: truncated series.
  const SteinSeries series = stein_series(a, Matrix::identity(2), 200);
  CHECK(max_abs_difference(sol.x, series.sum) < 1e-7);
}

TEST_CASE("Stein solver: singular when an eigenvalue product hits 1") {
  CHECK_THROWS_AS(solve_stein(Matrix{{2, 0}, {0, 0.5}}, Matrix::identity(2)), numerical_error);
  CHECK_THROWS_AS(solve_stein(Matrix{{1.0}}, Matrix{{1.0}}), numerical_error);
}

TEST_CASE("Stein solver rejects asymmetric R and shape mismatches") {
  CHECK_THROWS_AS(solve_stein(Matrix(2, 2), Matrix{{0, 1}, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(solve_stein(Matrix(2, 2), Matrix::identity(3)), std::invalid_argument);
}

TEST_CASE("stein_series: K = 0 returns R; geometric scalar limit; divergence") {
  const Matrix r{{2.0}};
  const SteinSeries k0 = stein_series(Matrix{{0.5}}, r, 0);
  CHECK(k0.sum(0, 0) == 2.0);
  CHECK(k0.last_term_norm == 2.0);

  const SteinSeries limit = stein_series(Matrix{{0.5}}, Matrix{{1.0}}, 60);
  CHECK(limit.sum(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(limit.last_term_norm < 1e-30);

  CHECK_THROWS_AS(stein_series(Matrix{{3.0}}, Matrix{{1.0}}, 300), numerical_error);
}

TEST_CASE("solver and series agree on 40 random stable systems") {
  Prng rng(73);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    const Matrix a = random_stable(rng, n, 0.1, 0.9);
    const Matrix r = random_positive_definite(rng, n);
    const SteinSolution sol = solve_stein(a, r);
    const SteinSeries series = stein_series(a, r, 300);
    CHECK((sol.x - series.sum).frobenius_norm() <= 1e-7 * (1.0 + r.frobenius_norm()));
    CHECK(sol.min_eigenvalue > 0.0);
  }
}

TEST_CASE("unstable direction is reported (not asserted)") {
  // For rho(A) > 1 the Stein solution cannot stay positive definite for
  // every positive definite R; count how often negativity shows up.
  Prng rng(79);
  int negative = 0, total = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    Matrix a = random_gaussian_matrix(rng, n, n);
    const double rho = spectral_radius(a);
    if (rho < 1e-12) continue;
    a *= rng.next_uniform(1.1, 2.0) / rho;
    bool saw_negative = false;
    for (int k = 0; k < 5; ++k) {
      const Matrix r = random_positive_definite(rng, n);
      try {
        if (solve_stein(a, r).min_eigenvalue < 0.0) saw_negative = true;
      } catch (const numerical_error&) {
        // singular pencil; skip this R
      }
    }
    ++total;
    if (saw_negative) ++negative;
  }
  MESSAGE("unstable matrices with an indefinite Stein solution: " << negative << "/" << total);
  CHECK(total >= 90);
}

TEST_CASE("SDLCP verification: spec examples") {
  const SdlcpCertificate valid =
      verify_sdlcp(Matrix(2, 2), -1.0 * Matrix::identity(2), Matrix::identity(2), Matrix(2, 2));
  CHECK(valid.valid);
  CHECK(valid.gaps.equation < 1e-14);
  CHECK(valid.gaps.complementarity < 1e-14);

  const SdlcpCertificate scalar =
      verify_sdlcp(Matrix{{0.5}}, Matrix{{-1.0}}, Matrix{{4.0 / 3.0}}, Matrix{{0.0}});
  CHECK(scalar.valid);

  const SdlcpCertificate violated =
      verify_sdlcp(Matrix(2, 2), Matrix(2, 2), Matrix::identity(2), Matrix::identity(2));
  CHECK_FALSE(violated.valid);
  CHECK(violated.gaps.complementarity == doctest::Approx(2.0));
}

TEST_CASE("SDLCP special case: solved for stable A with Q = -I, unsolved otherwise") {
  Prng rng(83);
  const Matrix a = random_stable(rng, 3, 0.2, 0.8);
  const SdlcpSpecialResult solved = sdlcp_special_solve(a, -1.0 * Matrix::identity(3));
  CHECK(solved.solved);
  REQUIRE(solved.certificate.has_value());
  CHECK(solved.certificate->valid);
  CHECK(solved.certificate->gaps.min_eigenvalue_x > 0.0);

  const SdlcpSpecialResult unsolved = sdlcp_special_solve(Matrix(2, 2), Matrix::identity(2));
  CHECK_FALSE(unsolved.solved);
  CHECK_FALSE(unsolved.reason.empty());

  const SdlcpSpecialResult scalar = sdlcp_special_solve(Matrix{{0.5}}, Matrix{{-1.0}});
  CHECK(scalar.solved);
  CHECK(scalar.certificate->x(0, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("power limit: converging, diverging, inconclusive") {
  const PowerLimitResult zero = power_limit(Matrix(2, 2), 10);
  CHECK(zero.verdict == PowerVerdict::converging);
  CHECK(zero.steps == 1);

  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  CHECK(power_limit(a, 500).verdict == PowerVerdict::converging);

  CHECK(power_limit(Matrix{{2, 0}, {0, 0}}, 100).verdict == PowerVerdict::diverging);

  const PowerLimitResult marginal = power_limit(Matrix::identity(2), 50);
  CHECK(marginal.verdict == PowerVerdict::inconclusive);
  CHECK(marginal.steps == 50);
}

TEST_CASE("power limit never contradicts the eigenvalue verdict") {
  Prng rng(89);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 4;
    const Matrix a = random_gaussian_matrix(rng, n, n);
    const PowerLimitResult p = power_limit(a, 400);
    const Verdict v = is_schur_stable(a).verdict;
    if (p.verdict == PowerVerdict::converging) CHECK(v != Verdict::unstable);
    if (p.verdict == PowerVerdict::diverging) CHECK(v != Verdict::stable);
  }
}

TEST_CASE("numerical radius: symmetric, block example, nilpotent") {
  Prng rng(97);
  const Matrix s = symmetric_part(random_gaussian_matrix(rng, 4, 4));
  CHECK(numerical_radius(s) == doctest::Approx(spectral_radius(s)).epsilon(1e-10));

  const Matrix block{{0.5, 0, 0}, {0, 0, 1}, {0, 0, 0}};
  CHECK(numerical_radius(block) == doctest::Approx(0.5).epsilon(1e-6));

  CHECK(numerical_radius(Matrix{{0, 1}, {0, 0}}) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("numerical radius agrees with a dense-grid oracle through the QR path") {
  // Independent route: a 2001-point grid with the top eigenvalue of the
  // Hermitian-part embedding taken from the general (QR) eigensolver instead
  // of the Jacobi path the implementation uses.
  Prng rng(99);
  const double pi = 3.14159265358979323846;
  for (int t = 0; t < 8; ++t) {
    const Matrix a = random_gaussian_matrix(rng, 3, 3);
    const Matrix sym = symmetric_part(a);
    const Matrix skew = skew_part(a);
    double grid_max = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double theta = pi * k / 2000.0;
      Matrix h(6, 6);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const double sv = std::cos(theta) * sym(i, j);
          const double kv = std::sin(theta) * skew(i, j);
          h(i, j) = sv;
          h(3 + i, 3 + j) = sv;
          h(i, 3 + j) = -kv;
          h(3 + i, j) = kv;
        }
      for (const auto& lambda : eigenvalues_uncertified(h)) {
        grid_max = std::max(grid_max, lambda.real());
      }
    }
    const double w = numerical_radius(a);
    CHECK(w >= grid_max - 1e-9);          // refinement never loses to the grid
    CHECK(w <= grid_max + 1e-5);          // and the dense grid brackets it
  }
}

TEST_CASE("radius inequalities rho <= w <= norm <= 2w on 200 random matrices") {
  Prng rng(101);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 5;
    const Matrix a = random_gaussian_matrix(rng, n, n);
    const double rho = spectral_radius(a);
    const double w = numerical_radius(a);
    const double norm = operator_norm(a);
    const double slack = 1e-8 * std::max(1.0, norm);
    CHECK(rho <= w + slack);
    CHECK(w <= norm + slack);
    CHECK(norm <= 2.0 * w + slack);
  }
}

TEST_CASE("aloid classification on reference cases") {
  Prng rng(103);
  const Matrix s = symmetric_part(random_gaussian_matrix(rng, 3, 3));
  const AloidClassification sym = classify_aloid(s);
  CHECK(sym.normaloid);
  CHECK(sym.spectraloid);

  const Matrix block{{0.5, 0, 0}, {0, 0, 1}, {0, 0, 0}};
  const AloidClassification mixed = classify_aloid(block);
  CHECK(mixed.spectraloid);
  CHECK_FALSE(mixed.normaloid);
  CHECK(mixed.norm == doctest::Approx(1.0).epsilon(1e-9));

  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  const AloidClassification neither = classify_aloid(a);
  CHECK_FALSE(neither.normaloid);
  CHECK_FALSE(neither.spectraloid);
  CHECK(neither.numerical_radius >= neither.rho);
  CHECK(neither.numerical_radius <= neither.norm);
}

TEST_CASE("nilpotency detection") {
  CHECK(is_nilpotent(Matrix{{0, 1}, {0, 0}}));
  CHECK(is_nilpotent(Matrix{{0, 3, -2}, {0, 0, 7}, {0, 0, 0}}));
  CHECK_FALSE(is_nilpotent(Matrix::identity(3)));
  CHECK(is_nilpotent(Matrix{{0.0}}));
}

TEST_CASE("orthogonal conjugation preserves the stable verdict") {
  Prng rng(107);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 4;
    const Matrix a = random_stable(rng, n, 0.1, 0.9);
    const Matrix u = random_orthogonal(rng, n);
    CHECK(is_schur_stable(u * a * u.transposed()).verdict == Verdict::stable);
  }
}
