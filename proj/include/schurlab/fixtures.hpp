#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurlab/config.hpp"

namespace schurlab {

// One recomputed quantity of a built-in worked example.  Numeric claims
// carry the printed value and a tolerance; qualitative claims only a status.
struct ClaimResult {
  std::string quantity;
  std::optional<double> printed;
  std::optional<double> recomputed;
  double tolerance = 0.0;
  // Numeric: "reproduced" | "value-differs".  Qualitative: "holds" | "contradicted".
  std::string status;
  std::string note;
};

// Per-example outcome.  Status roll-up: any contradicted claim makes the
// example "discrepant"; otherwise any out-of-tolerance value makes it
// "claim-holds-value-differs"; otherwise "reproduced".
struct FixtureResult {
  std::string id;
  std::string description;
  std::string status;
  std::vector<ClaimResult> claims;
  std::vector<std::string> notes;
};

// Recomputes every built-in example and reports per-claim statuses.
// Printed values that disagree with their own stated inputs are reported
// next to the recomputed ones, never silently corrected.
std::vector<FixtureResult> run_paper_examples(const Tolerances& tol = {});

}  // namespace schurlab
