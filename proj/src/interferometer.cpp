#include "fringelab/interferometer.hpp"

#include <algorithm>
#include <cmath>

#include "fringelab/error.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab {

namespace {

Complex expi(double angle) { return std::polar(1.0, angle); }

}  // namespace

ComplexMatrix special_frame(const ComplexMatrix& basis) {
  return (1.0 / std::sqrt(determinant2(basis))) * basis;
}

ComplexMatrix transducer_unitary(const TransducerSettings& s) {
  if (s.input_basis.rows() != 2 || s.input_basis.cols() != 2) {
    throw Error(ErrorCode::InvalidDimension, "transducer input basis must be 2x2");
  }
  if (unitarity_defect(s.input_basis) > tol::unitary) {
    throw Error(ErrorCode::InvalidParameter, "transducer input basis is not unitary");
  }
  const double a = std::cos(0.5 * s.mu);
  const double b = std::sin(0.5 * s.mu);
  // Columns are the images of |0'> and |1'>.
  const ComplexMatrix u(2, 2,
                        {a * expi(s.phi_a), -b * expi(-s.phi_b),
                         b * expi(s.phi_b), a * expi(-s.phi_a)});
  return u * special_frame(s.input_basis).adjoint();
}

DensityMatrix apply_interferometer(const DensityMatrix& rho, const TransducerSettings& s1,
                                   const TransducerSettings& s2) {
  if (rho.dim() != 4) throw Error(ErrorCode::InvalidDimension, "interferometer needs a two-qubit state");
  const ComplexMatrix t = kron(transducer_unitary(s1), transducer_unitary(s2));
  ComplexMatrix out = t * rho.matrix() * t.adjoint();
  for (std::size_t i = 0; i < 4; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) out(j, i) = std::conj(out(i, j));
  }
  return DensityMatrix(std::move(out));
}

DetectionProbabilities detection_probabilities(const DensityMatrix& rho, const TransducerSettings& s1,
                                               const TransducerSettings& s2) {
  const DensityMatrix out = apply_interferometer(rho, s1, s2);
  DetectionProbabilities p;
  p.u1u2 = out(0, 0).real();
  p.u1l2 = out(1, 1).real();
  p.l1u2 = out(2, 2).real();
  p.l1l2 = out(3, 3).real();
  p.u1 = p.u1u2 + p.u1l2;
  p.l1 = p.l1u2 + p.l1l2;
  p.u2 = p.u1u2 + p.l1u2;
  p.l2 = p.u1l2 + p.l1l2;
  return p;
}

double single_detection_probability(const DensityMatrix& rho1, const TransducerSettings& s) {
  if (rho1.dim() != 2) throw Error(ErrorCode::InvalidDimension, "single-arm probability needs a qubit state");
  const ComplexMatrix t = transducer_unitary(s);
  Complex p = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) p += t(0, i) * rho1(i, j) * std::conj(t(0, j));
  return p.real();
}

double combined_phase(const TransducerSettings& s1, const TransducerSettings& s2) {
  return s1.phi_a + s1.phi_b - s2.phi_a - s2.phi_b;
}

double joint_probability_formula(const WernerCanonical& canon, double mu, double upsilon, double phi) {
  const double a = std::cos(0.5 * mu);
  const double b = std::sin(0.5 * mu);
  const double c = std::cos(0.5 * upsilon);
  const double d = std::sin(0.5 * upsilon);
  return a * a * (c * c * canon.w + d * d * canon.x) + b * b * (c * c * canon.y + d * d * canon.w) +
         2.0 * a * b * c * d * (canon.z * expi(phi)).real();
}

}  // namespace fringelab
