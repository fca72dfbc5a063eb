#pragma once

#include "fringelab/families.hpp"
#include "fringelab/interferometer.hpp"
#include "fringelab/optimize.hpp"

namespace fringelab {

struct FringeObservables {
  enum class Method { analytic, numeric, sampled };

  double v1 = 0.0;   // single-particle fringe visibility
  double p12 = 0.0;  // maximum joint detection probability P(U1U2)
  SettingsPair argmax;
  Method method = Method::analytic;
};

/// sqrt((rho00 - rho11)^2 + 4|rho01|^2).
double visibility_analytic(const DensityMatrix& rho1);

struct VisibilityScan {
  double v1 = 0.0;
  double p_max = 0.0;
  double p_min = 0.0;
  TransducerSettings max_settings;
  TransducerSettings min_settings;
};

/// Extremizes the single-arm P(U1) over (mu, phi_a, phi_b).
VisibilityScan visibility_numeric(const DensityMatrix& rho1, const OptimizerConfig& cfg);

/// (p + 1)/4 + p(|alpha|^2 - |beta|^2)/2, reached at mu = 0, upsilon = pi.
double p12_analytic(const WernerParams& params);

struct JointMaximum {
  double p12 = 0.0;
  SettingsPair argmax;
};

/// Maximizes P(U1U2) with both transducers acting in the given bases.
/// Only phi_a + phi_b enters an arm's output, so the search runs over
/// (mu, upsilon, phi_1, phi_2) with phi_b = phi_d = 0.
JointMaximum p12_numeric(const DensityMatrix& rho, const ComplexMatrix& basis_a, const ComplexMatrix& basis_b,
                         const OptimizerConfig& cfg);

/// Diagnostic: P12 found with transducers in the supplied bases versus in
/// the computational frame with free settings. The gap is the cost of
/// committing to a basis.
struct AlignmentDiagnostic {
  double aligned = 0.0;
  double free = 0.0;
  double gap = 0.0;
};
AlignmentDiagnostic p12_alignment_gap(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                      const ComplexMatrix& basis_b, const OptimizerConfig& cfg);

/// Closed-form (V1, P12) for a Werner-class state; argmax in Schmidt bases.
FringeObservables analytic_observables(const WernerParams& params);

/// Both observables by extremization.
FringeObservables numeric_observables(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                      const ComplexMatrix& basis_b, const OptimizerConfig& cfg);

}  // namespace fringelab
