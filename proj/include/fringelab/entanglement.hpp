#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fringelab/families.hpp"
#include "fringelab/fringe.hpp"

namespace fringelab {

/// Square roots of the eigenvalues of rho * rho~, descending, where
/// rho~ = (s (x) s) rho* (s (x) s) and s defaults to sigma_y. Computed as
/// singular values of W^T (s (x) s) W with rho = W W^dagger, which keeps
/// near-zero values accurate. s (x) s must be real.
std::array<double, 4> spin_flip_singular_values(const DensityMatrix& rho,
                                                const ComplexMatrix& flip = pauli_y());

/// max(l1 - l2 - l3 - l4, 0) over spin_flip_singular_values.
double wootters_concurrence(const DensityMatrix& rho, const ComplexMatrix& flip = pauli_y());

/// 2 max(p|alpha beta| - (1 - p)/4, 0).
double werner_concurrence_closed(const WernerParams& params);

/// spin_flip_singular_values of the Werner state; equals the multiset
/// {w, w, sqrt(xy) - |z|, sqrt(xy) + |z|} of werner_canonical.
std::array<double, 4> sqrt_eigenvalues_rho_rhotilde(const WernerParams& params);

struct ConcurrenceReport {
  double estimated_p = 0.0;
  double estimated_c = 0.0;  // clamped at zero
  double signed_c = 0.0;     // before the clamp; negative means separable
  double feasibility = 0.0;  // 4 P12 - 3 V1 - 1
  std::optional<double> oracle_c;
  FringeObservables inputs;
};

/// p = 4 P12 - 2 V1 - 1. Throws InconsistentObservables outside [0, 1]
/// (with tol::p_range slack).
double estimate_p(const FringeObservables& obs);

/// Inverts (V1, P12) into concurrence for the Werner class. Throws
/// FeasibilityViolation when 4 P12 - 3 V1 - 1 < -tol::feasibility_violation
/// or the square-root argument is below -tol::sqrt_truncation.
ConcurrenceReport estimate_concurrence(const FringeObservables& obs);
ConcurrenceReport estimate_concurrence(const FringeObservables& obs, const DensityMatrix& truth);

/// Signed inversion value without domain checks; the square-root argument
/// is floored at zero. Used for resampling.
double signed_concurrence(double v1, double p12);

enum class TwoParameterFamily { werner_fixed_alpha, gisin };

struct InversionSolution {
  double param1 = 0.0;  // werner: p,        gisin: a
  double param2 = 0.0;  // werner: |alpha|^2, gisin: x
  double residual = 0.0;
  double concurrence = 0.0;
};

struct InversionResult {
  InversionSolution best;
  std::vector<InversionSolution> solutions;  // distinct, canonicalized
  bool ambiguous = false;
  // Spread of the concurrence over all solutions. The observables do not
  // pin the state down when these differ.
  double concurrence_min = 0.0;
  double concurrence_max = 0.0;
};

/// Forward maps used by the inversion.
DensityMatrix family_state(TwoParameterFamily family, double param1, double param2);
std::array<double, 2> family_observables(TwoParameterFamily family, double param1, double param2,
                                         const OptimizerConfig& cfg);

/// Least-squares solve of {V1(t1, t2) = v1, P12(t1, t2) = p12} on the unit
/// square. Solutions are reported in the fundamental domain of each
/// family's mirror symmetry (|alpha|^2 >= 1/2, a >= 1/2). Throws
/// NoConsistentState when no residual gets below cfg.tolerance.
InversionResult invert_two_parameter_family(double v1, double p12, TwoParameterFamily family,
                                            const OptimizerConfig& cfg);

}  // namespace fringelab
