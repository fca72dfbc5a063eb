#pragma once

#include <array>

#include "fringelab/families.hpp"
#include "fringelab/statespace.hpp"

namespace fringelab {

/// One arm's transducer: |a| = cos(mu/2), |b| = sin(mu/2), phases phi_a and
/// phi_b, acting on the primed basis whose kets are the columns of
/// input_basis (computational basis by default).
struct TransducerSettings {
  double mu = 0.0;
  double phi_a = 0.0;
  double phi_b = 0.0;
  ComplexMatrix input_basis = ComplexMatrix::identity(2);
};

struct SettingsPair {
  TransducerSettings first;
  TransducerSettings second;
};

/// Ideal-detector probabilities at the output ports U (index 0) and L.
struct DetectionProbabilities {
  double u1 = 0.0, l1 = 0.0, u2 = 0.0, l2 = 0.0;
  double u1u2 = 0.0, u1l2 = 0.0, l1u2 = 0.0, l1l2 = 0.0;

  std::array<double, 4> joints() const { return {u1u2, u1l2, l1u2, l1l2}; }
};

/// basis / sqrt(det basis): same kets up to a common phase, determinant 1.
ComplexMatrix special_frame(const ComplexMatrix& basis);

/// Transducer map in the computational frame:
///   T|0'> = a e^{i phi_a}|U> + b e^{i phi_b}|L>,
///   T|1'> = -b e^{-i phi_b}|U> + a e^{-i phi_a}|L>.
/// The input basis is rephased into SU(2) first, so det T = 1 always; this
/// only shifts the global phase of the output.
ComplexMatrix transducer_unitary(const TransducerSettings& s);

/// (T1 (x) T2) rho (T1 (x) T2)^dagger.
DensityMatrix apply_interferometer(const DensityMatrix& rho, const TransducerSettings& s1,
                                   const TransducerSettings& s2);

DetectionProbabilities detection_probabilities(const DensityMatrix& rho, const TransducerSettings& s1,
                                               const TransducerSettings& s2);

/// Single-arm P(U) for a one-qubit state.
double single_detection_probability(const DensityMatrix& rho1, const TransducerSettings& s);

/// phi_a + phi_b - phi_c - phi_d, the only phase combination the
/// Schmidt-aligned joint probability depends on.
double combined_phase(const TransducerSettings& s1, const TransducerSettings& s2);

/// Closed-form P(U1U2) for a Werner-class state when both transducers act
/// in the Schmidt bases of its pure part.
double joint_probability_formula(const WernerCanonical& canon, double mu, double upsilon, double phi);

}  // namespace fringelab
