#include "schurlab/fixtures.hpp"

#include <cmath>

#include "schurlab/eigen.hpp"
#include "schurlab/matmap.hpp"
#include "schurlab/preserver.hpp"
#include "schurlab/random.hpp"
#include "schurlab/stability.hpp"

namespace schurlab {

namespace {

constexpr std::uint64_t kFixtureSeed = 20260808ULL;

ClaimResult numeric_claim(std::string quantity, double printed, double recomputed,
                          double tolerance, std::string note = {}) {
  ClaimResult c;
  c.quantity = std::move(quantity);
  c.printed = printed;
  c.recomputed = recomputed;
  c.tolerance = tolerance;
  c.status = std::abs(printed - recomputed) <= tolerance ? "reproduced" : "value-differs";
  c.note = std::move(note);
  return c;
}

ClaimResult qualitative_claim(std::string quantity, bool holds, std::string note = {}) {
  ClaimResult c;
  c.quantity = std::move(quantity);
  c.status = holds ? "holds" : "contradicted";
  c.note = std::move(note);
  return c;
}

ClaimResult qualitative_claim_with_value(std::string quantity, bool holds, double recomputed,
                                         std::string note = {}) {
  ClaimResult c = qualitative_claim(std::move(quantity), holds, std::move(note));
  c.recomputed = recomputed;
  return c;
}

std::string roll_up_status(const std::vector<ClaimResult>& claims) {
  bool value_differs = false;
  for (const ClaimResult& c : claims) {
    if (c.status == "contradicted") return "discrepant";
    if (c.status == "value-differs") value_differs = true;
  }
  return value_differs ? "claim-holds-value-differs" : "reproduced";
}

void finish(FixtureResult& f) { f.status = roll_up_status(f.claims); }

// X -> M X N on 2x2 matrices, entrywise:
//   pick(i, j) extracts entry (i, j) of X into position (r, c).
MapSpec entry_mover(std::size_t i, std::size_t j, std::size_t r, std::size_t c, double weight) {
  Matrix left(2, 2);   // E(r, i)
  Matrix right(2, 2);  // E(j, c)
  left(r, i) = 1.0;
  right(j, c) = weight;
  return MapSpec::left_right(left, right);
}

FixtureResult fixture_eg_2_0(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.0";
  f.description = "M = [[0.5,0,10],[0,0.5,0],[0,5,0.5]], N = I, A = 0.5 + nilpotent block; "
                  "A is spectraloid but not normaloid and MAN is unstable";
  const Matrix m{{0.5, 0, 10}, {0, 0.5, 0}, {0, 5, 0.5}};
  const Matrix a{{0.5, 0, 0}, {0, 0, 1}, {0, 0, 0}};
  const Matrix man = m * a;  // N = I

  f.claims.push_back(numeric_claim("rho(M)", 0.5, spectral_radius(m, tol), 1e-9));
  f.claims.push_back(numeric_claim("||A||", 1.0, operator_norm(a, tol), 1e-9));
  f.claims.push_back(numeric_claim("w(A)", 0.5, numerical_radius(a, tol), 1e-6));
  f.claims.push_back(numeric_claim("rho(A)", 0.5, spectral_radius(a, tol), 1e-9));

  const AloidClassification aloid = classify_aloid(a, tol);
  f.claims.push_back(
      qualitative_claim("A spectraloid but not normaloid", aloid.spectraloid && !aloid.normaloid));

  const StabilityReport man_report = is_schur_stable(man, tol);
  f.claims.push_back(qualitative_claim_with_value("MAN not Schur stable",
                                                  man_report.verdict == Verdict::unstable,
                                                  man_report.spectral_radius));
  double top_eig = 0.0;
  for (const auto& lambda : man_report.spectrum.eigenvalues) {
    top_eig = std::max(top_eig, lambda.real());
  }
  f.claims.push_back(numeric_claim("largest eigenvalue of MAN", 5.0, top_eig, 1e-9,
                                   "value obtained by block computation, not printed"));
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_1(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.1";
  f.description = "diagonal M, N = I: A and M Schur stable but MAN is not";
  const Matrix a{{1.17258, 1.35575}, {-0.94256, -0.39761}};
  const Matrix m{{0.79323, 0}, {0, -0.24866}};
  const Matrix man = m * a;

  f.claims.push_back(numeric_claim("rho(A)", 0.90091, spectral_radius(a, tol), 1e-3));
  f.claims.push_back(numeric_claim("||A||", 2.0245, operator_norm(a, tol), 1e-3));
  f.claims.push_back(
      qualitative_claim("A and M Schur stable", is_schur_stable(a, tol).verdict == Verdict::stable &&
                                                    is_schur_stable(m, tol).verdict == Verdict::stable));
  f.claims.push_back(qualitative_claim("A not normaloid", !classify_aloid(a, tol).normaloid));

  const double rho_man = spectral_radius(man, tol);
  f.claims.push_back(qualitative_claim_with_value("MAN not Schur stable",
                                                  verdict_for_radius(rho_man, tol) == Verdict::unstable,
                                                  rho_man));
  f.claims.push_back(numeric_claim(
      "rho(MAN)", 1.1626, rho_man, 1e-3,
      "recomputation from the stated M, A gives 1.16626; the printed 1.1626 appears to drop a digit"));
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_2(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.2";
  f.description = "non-symmetric M with rho(MN) = 1: stability of A is not preserved";
  const Matrix m{{1, -1}, {0, -1}};
  const Matrix a{{0.5, 0}, {10, -0.5}};
  const Matrix man = m * a;  // N = I
  const Matrix printed_product{{49.5, 2.5}, {-10, 0.5}};

  f.claims.push_back(
      qualitative_claim("A Schur stable", is_schur_stable(a, tol).verdict == Verdict::stable));
  const double rho_man = spectral_radius(man, tol);
  f.claims.push_back(qualitative_claim_with_value("MAN not Schur stable",
                                                  verdict_for_radius(rho_man, tol) == Verdict::unstable,
                                                  rho_man));
  f.claims.push_back(numeric_claim(
      "rho(MAN)", 48.99, rho_man, 1e-2,
      "recomputed product MA = [[-9.5, 0.5], [-10, 0.5]] has rho = 8.9721; the printed product "
      "matrix is inconsistent with the stated M and A"));
  f.notes.push_back("rho of the printed (inconsistent) product matrix is " +
                    std::to_string(spectral_radius(printed_product, tol)) +
                    ", matching the printed 48.99");
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_3(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.3";
  f.description = "symmetric M and N = (2/3) I with rho(MN) = 1: stability not preserved";
  const Matrix m{{-1, -0.5}, {0.5, -1}};
  const Matrix a{{0.5, 100}, {0, -0.5}};
  const Matrix man = (2.0 / 3.0) * (m * a);

  f.claims.push_back(
      qualitative_claim("A Schur stable", is_schur_stable(a, tol).verdict == Verdict::stable));
  const double rho_man = spectral_radius(man, tol);
  f.claims.push_back(qualitative_claim_with_value("MAN not Schur stable",
                                                  verdict_for_radius(rho_man, tol) == Verdict::unstable,
                                                  rho_man));
  f.claims.push_back(numeric_claim("rho(MAN)", 33.33, rho_man, 2e-2));
  const Matrix ma = m * a;
  f.notes.push_back("recomputed MA(0,1) = " + std::to_string(ma(0, 1)) +
                    " whereas the printed product shows -100.25; the rho claim is unaffected");
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_4(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.4";
  f.description = "normal map L' = (1/4) L with rho(L') = 1/2; printed image omits the 1/4 factor";
  // L: [[a, b], [c, d]] -> [[a, b], [2d, -2c]]
  const MapSpec l_spec = MapSpec::sum({
      entry_mover(0, 0, 0, 0, 1.0),  // a stays
      entry_mover(0, 1, 0, 1, 1.0),  // b stays
      entry_mover(1, 1, 1, 0, 2.0),  // 2d into position (1,0)
      entry_mover(1, 0, 1, 1, -2.0), // -2c into position (1,1)
  });
  const MapSpec l_prime_spec = MapSpec::scale(0.25, l_spec);
  const MatrixMap l_prime = build(l_prime_spec, tol);
  const Matrix a{{0.75, 5}, {0, -0.75}};

  f.claims.push_back(numeric_claim("rho(L')", 0.5, map_spectral_radius(l_prime, tol), 1e-9));
  f.claims.push_back(qualitative_claim("L' normal", map_is_normal(l_prime, tol)));
  f.claims.push_back(
      qualitative_claim("A Schur stable", is_schur_stable(a, tol).verdict == Verdict::stable));
  f.claims.push_back(qualitative_claim("A not normaloid", !classify_aloid(a, tol).normaloid));

  const double rho_image = spectral_radius(apply(l_prime, a, tol), tol);
  const double rho_unscaled = spectral_radius(apply(build(l_spec, tol), a, tol), tol);
  f.claims.push_back(qualitative_claim_with_value(
      "rho(L'(A)) > 1", rho_image > 1.0, rho_image,
      "recomputed rho(L'(A)) = 0.68465 < 1; the printed image matrix [[0.75, 5], [-1.5, 0]] equals "
      "the unscaled L(A), whose rho is 2.7386"));
  f.notes.push_back("rho(L(A)) without the 1/4 factor recomputes to " + std::to_string(rho_unscaled));
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_5(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.5";
  f.description = "singular non-diagonalizable contraction [[a,b],[c,d]] -> [[b,c],[0,0]] "
                  "does not preserve Schur stability";
  const MapSpec l_spec = MapSpec::sum({
      entry_mover(0, 1, 0, 0, 1.0),  // b into (0,0)
      entry_mover(1, 0, 0, 1, 1.0),  // c into (0,1)
  });
  const MatrixMap l = build(l_spec, tol);

  const Spectrum spec = map_spectrum(l, tol);
  double max_modulus = 0.0;
  for (const auto& lambda : spec.eigenvalues) max_modulus = std::max(max_modulus, std::abs(lambda));
  f.claims.push_back(numeric_claim("rho(L)", 0.0, max_modulus, 1e-8));
  f.claims.push_back(numeric_claim("||L||", 1.0, frobenius_operator_norm(l, tol), 1e-9));
  f.claims.push_back(qualitative_claim(
      "L not diagonalizable", is_nilpotent(l.rep, tol) && l.rep.frobenius_norm() > 0.0,
      "nonzero nilpotent representation"));

  // The source states no witness; this one is found by hand.
  const Matrix witness{{0, 2}, {0.1, 0}};
  const Matrix image = apply(l, witness, tol);
  const bool breaks_stability = is_schur_stable(witness, tol).verdict == Verdict::stable &&
                                is_schur_stable(image, tol).verdict == Verdict::unstable;
  f.claims.push_back(qualitative_claim("L does not preserve Schur stability", breaks_stability,
                                       "witness A = [[0, 2], [0.1, 0]], L(A) = [[2, 0.1], [0, 0]]"));
  finish(f);
  return f;
}

FixtureResult fixture_eg_2_6(const Tolerances& tol) {
  FixtureResult f;
  f.id = "eg-2.6";
  f.description = "singular map [[a,b],[c,d]] -> [[b,2c],[0,0]] with rho(L) = 0, ||L|| = 2";
  const MapSpec l_spec = MapSpec::sum({
      entry_mover(0, 1, 0, 0, 1.0),  // b into (0,0)
      entry_mover(1, 0, 0, 1, 2.0),  // 2c into (0,1)
  });
  const MatrixMap l = build(l_spec, tol);
  const Matrix a{{0.5, 2}, {0, 0.5}};
  const Matrix image = apply(l, a, tol);

  const Spectrum spec = map_spectrum(l, tol);
  double max_modulus = 0.0;
  for (const auto& lambda : spec.eigenvalues) max_modulus = std::max(max_modulus, std::abs(lambda));
  f.claims.push_back(numeric_claim("rho(L)", 0.0, max_modulus, 1e-8));
  f.claims.push_back(numeric_claim("||L||", 2.0, frobenius_operator_norm(l, tol), 1e-9));
  f.claims.push_back(
      qualitative_claim("A Schur stable", is_schur_stable(a, tol).verdict == Verdict::stable));
  f.claims.push_back(numeric_claim("rho(L(A))", 2.0, spectral_radius(image, tol), 1e-9));
  f.claims.push_back(qualitative_claim("L(A) not Schur stable",
                                       is_schur_stable(image, tol).verdict == Verdict::unstable));
  f.claims.push_back(qualitative_claim(
      "L not diagonalizable", is_nilpotent(l.rep, tol) && l.rep.frobenius_norm() > 0.0));
  finish(f);
  return f;
}

FixtureResult fixture_rem_2_12_1(const Tolerances& tol) {
  FixtureResult f;
  f.id = "rem-2.12-1";
  f.description = "[[a,b],[c,d]] -> [[a,2b],[c/2,d]] preserves trace and determinant and "
                  "doubles the standard nilpotent";
  // Equals similarity by diag(1, 1/2).
  const MatrixMap l = build(MapSpec::similarity(Matrix{{1, 0}, {0, 0.5}}), tol);

  double max_trace_dev = 0.0, max_det_dev = 0.0, max_rho_dev = 0.0;
  for (std::uint64_t index = 0; index < 100; ++index) {
    Prng rng = Prng::for_trial(kFixtureSeed, index);
    const Matrix x = random_gaussian_matrix(rng, 2, 2);
    const Matrix y = apply(l, x, tol);
    max_trace_dev = std::max(max_trace_dev, std::abs(x.trace() - y.trace()));
    const double det_x = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
    const double det_y = y(0, 0) * y(1, 1) - y(0, 1) * y(1, 0);
    max_det_dev = std::max(max_det_dev, std::abs(det_x - det_y));
    max_rho_dev =
        std::max(max_rho_dev, std::abs(spectral_radius(x, tol) - spectral_radius(y, tol)));
  }
  f.claims.push_back(qualitative_claim_with_value("trace preserved on 100 seeded samples",
                                                  max_trace_dev <= 1e-12, max_trace_dev));
  f.claims.push_back(qualitative_claim_with_value("determinant preserved on 100 seeded samples",
                                                  max_det_dev <= 1e-12, max_det_dev));
  f.claims.push_back(qualitative_claim_with_value("spectral radius preserved on 100 seeded samples",
                                                  max_rho_dev <= 1e-10, max_rho_dev));

  const Matrix nilpotent{{0, 1}, {0, 0}};
  const Matrix image = apply(l, nilpotent, tol);
  f.claims.push_back(qualitative_claim("L(N) = 2N for the standard nilpotent N",
                                       max_abs_difference(image, 2.0 * nilpotent) <= 1e-12));
  finish(f);
  return f;
}

}  // namespace

std::vector<FixtureResult> run_paper_examples(const Tolerances& tol) {
  return {
      fixture_eg_2_0(tol), fixture_eg_2_1(tol), fixture_eg_2_2(tol), fixture_eg_2_3(tol),
      fixture_eg_2_4(tol), fixture_eg_2_5(tol), fixture_eg_2_6(tol), fixture_rem_2_12_1(tol),
  };
}

}  // namespace schurlab
