#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurlab/config.hpp"
#include "schurlab/matmap.hpp"
#include "schurlab/matrix.hpp"

namespace schurlab {

enum class SampleClass { general, symmetric, normaloid, nilpotent };
const char* to_string(SampleClass c);

// Seeded sampling plan.  Samples are a pure function of (seed, index), so
// every verdict is replayable; trials are independent and the reported
// counterexample is always the one with the smallest index.
struct SampleConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  SampleClass klass = SampleClass::general;
  double band_lo = 0.1;  // target spectral radius band for stable samples
  double band_hi = 0.9;  // must stay clear of the marginal zone (<= 1 - 1e-6)
  std::size_t n = 2;

  void validate() const;
};

struct Witness {
  std::size_t trial_index = 0;
  Matrix input;
  Matrix image;
  double rho_input = 0.0;
  double rho_image = 0.0;
};

// Counterexamples require strict separation: rho(A) <= 1 - 1e-6 and
// rho(L(A)) >= 1 + 1e-6.  Near-circle verdicts never refute anything.
struct PreserverVerdict {
  bool counterexample = false;
  std::optional<Witness> witness;
  std::size_t trials_run = 0;
  std::uint64_t seed = 0;
};

struct OntoVerdict {
  bool onto = false;
  bool singular = false;
  std::string singular_reason;
  PreserverVerdict forward;
  std::optional<PreserverVerdict> backward;
};

struct RhoPreservationResult {
  bool pass = false;
  double max_relative_deviation = 0.0;
  std::size_t trials_run = 0;
  std::uint64_t seed = 0;
};

struct NilpotentPreservationResult {
  PreserverVerdict into_hypothesis;  // general-class into test for the hypothesis chain
  bool hypothesis_holds = false;
  std::size_t trials_run = 0;
  std::size_t violations = 0;
  std::optional<Witness> first_violation;
  bool pass = false;  // no violations whenever the hypothesis holds
};

struct StableBasis {
  Subspace space = Subspace::full;
  std::vector<Matrix> elements;
  std::size_t coordinate_rank = 0;  // rank of the stacked vec/svec coordinates
};

// Deterministic function of (cfg.seed, index).  general/symmetric/normaloid:
// Gaussian draw (symmetrized for the latter two), rescaled so the spectral
// radius lands uniformly in the band; nilpotent: strictly upper triangular
// Gaussian, unscaled.
Matrix sample_stable(const SampleConfig& cfg, std::uint64_t index, const Tolerances& tol = {});

// Schur stable bases: {E_ii/2} u {E_ij : i != j} on the full space,
// {E_ii/2} u {(E_ij+E_ji)/2 : i < j} on the symmetric one.
StableBasis stable_basis(Subspace space, std::size_t n, const Tolerances& tol = {});

PreserverVerdict test_into_preserver(const MatrixMap& map, const SampleConfig& cfg,
                                     const Tolerances& tol = {});

// Into test on L and on L^-1; onto iff both are clean.  A singular map is
// reported not-onto with the singularity as evidence.
OntoVerdict test_onto_preserver(const MatrixMap& map, const SampleConfig& cfg,
                                const Tolerances& tol = {});

// max over trials of |rho(L(A)) - rho(A)| / max(rho(A), 1e-12); pass <= 1e-6.
RhoPreservationResult test_rho_preservation(const MatrixMap& map, const SampleConfig& cfg,
                                            const Tolerances& tol = {});

// Requires cfg.klass == nilpotent and a full-space map.
NilpotentPreservationResult test_nilpotent_preservation(const MatrixMap& map,
                                                        const SampleConfig& cfg,
                                                        const Tolerances& tol = {});

// The coefficient condition for trace-shift maps to preserve the open-disc
// spectrum: beta != 0, alpha n + beta != 0, (n-1)|alpha| + |beta+alpha| <= 1.
bool jlrsp_condition(double alpha, double beta, std::size_t n);

enum class CanonicalFlavor { similarity, transpose_similarity, orthogonal_congruence };

// True iff the map agrees with the candidate canonical form on the stable
// basis within 1e-8 relative.  With onto=true, |c| = 1 is required for the
// similarity flavors and c in {1,-1} for orthogonal congruence.
bool verify_canonical_form(const MatrixMap& map, double c, const Matrix& t,
                           CanonicalFlavor flavor, bool onto = true,
                           const Tolerances& tol = {});

}  // namespace schurlab
