#pragma once

#include <cstdint>
#include <optional>

#include "fringelab/entanglement.hpp"
#include "fringelab/montecarlo.hpp"

namespace fringelab {

enum class FamilyKind { werner, gisin, pure, random };

/// werner: (p, alpha2); gisin: (a, x); pure: alpha2 with p = 1;
/// random: Haar-random pure part drawn from state_seed, mixed with p.
struct FamilyChoice {
  FamilyKind kind = FamilyKind::werner;
  double p = 1.0;
  double alpha2 = 0.5;
  double a = 0.5;
  double x = 1.0;
  std::uint64_t state_seed = 0;
};

struct EstimateConfig {
  FamilyChoice family;
  std::optional<std::int64_t> shots;  // absent: exact probabilities
  std::uint64_t seed = 0;
  bool numeric = false;  // exact mode: optimizers instead of closed forms
  OptimizerConfig optimizer;
  DetectorModel detector;
};

struct EstimateOutcome {
  // The two parameters reported for the family (see FamilyChoice). For
  // random states param2 is the Schmidt weight |alpha|^2 of the draw.
  double param1 = 0.0;
  double param2 = 0.0;
  ConcurrenceReport report;
  std::optional<ObservableEstimates> sampled;
  std::optional<ConcurrenceWithError> sampled_c;
  std::optional<InversionResult> inversion;
};

/// Throws InvalidParameter for out-of-domain parameters and InvalidPlan for
/// a shot budget below 1 or shots requested for the Gisin family.
void validate(const EstimateConfig& cfg);

DensityMatrix build_state(const FamilyChoice& family);

/// Builds the state, obtains (V1, P12) and inverts them. Werner-class
/// families use the closed inversion and throw FeasibilityViolation when
/// it does not apply (in shot mode: when no bootstrap resample is
/// feasible). Gisin states go through the two-parameter inversion.
EstimateOutcome run_estimate(const EstimateConfig& cfg);

}  // namespace fringelab
