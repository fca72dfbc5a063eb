#include "fringelab/fringe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fringelab/error.hpp"

namespace fringelab {

namespace {

constexpr double kPi = std::numbers::pi;

// First row of the transducer matrix in its own (primed) frame.
std::array<Complex, 2> output_row(double mu, double phi_a, double phi_b) {
  return {std::cos(0.5 * mu) * std::polar(1.0, phi_a), -std::sin(0.5 * mu) * std::polar(1.0, -phi_b)};
}

double quadratic_form(const ComplexMatrix& m, std::span<const Complex> r) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) row += m(i, j) * std::conj(r[j]);
    acc += r[i] * row;
  }
  return acc.real();
}

}  // namespace

double visibility_analytic(const DensityMatrix& rho1) {
  if (rho1.dim() != 2) throw Error(ErrorCode::InvalidDimension, "visibility needs a single-qubit state");
  const double diff = rho1(0, 0).real() - rho1(1, 1).real();
  const double info = diff * diff + 4.0 * std::norm(rho1(0, 1));
  return std::min(1.0, std::sqrt(std::max(info, 0.0)));
}

VisibilityScan visibility_numeric(const DensityMatrix& rho1, const OptimizerConfig& cfg) {
  if (rho1.dim() != 2) throw Error(ErrorCode::InvalidDimension, "visibility needs a single-qubit state");
  const ComplexMatrix& m = rho1.matrix();
  const auto prob = [&m](std::span<const double> x) {
    const auto row = output_row(x[0], x[1], x[2]);
    return quadratic_form(m, row);
  };
  const std::array<Axis, 3> axes{Axis::bounded(0.0, kPi), Axis::periodic(2.0 * kPi),
                                 Axis::periodic(2.0 * kPi)};
  const OptimumPoint hi = maximize(prob, axes, cfg);
  const OptimumPoint lo = maximize([&](std::span<const double> x) { return -prob(x); }, axes, cfg);

  VisibilityScan out;
  out.p_max = hi.value;
  out.p_min = -lo.value;
  out.v1 = (out.p_max - out.p_min) / (out.p_max + out.p_min);
  out.max_settings = {hi.x[0], hi.x[1], hi.x[2], ComplexMatrix::identity(2)};
  out.min_settings = {lo.x[0], lo.x[1], lo.x[2], ComplexMatrix::identity(2)};
  return out;
}

double p12_analytic(const WernerParams& params) {
  const SchmidtForm sf = schmidt_decompose(params.psi);
  const double a2 = std::norm(sf.alpha);
  const double b2 = std::norm(sf.beta);
  return (params.p + 1.0) / 4.0 + params.p * (a2 - b2) / 2.0;
}

JointMaximum p12_numeric(const DensityMatrix& rho, const ComplexMatrix& basis_a, const ComplexMatrix& basis_b,
                         const OptimizerConfig& cfg) {
  if (rho.dim() != 4) throw Error(ErrorCode::InvalidDimension, "p12 needs a two-qubit state");
  // Express rho in the transducers' own frames once; the objective then
  // only needs the first rows of the two bare transducer matrices.
  const ComplexMatrix frame = kron(special_frame(basis_a), special_frame(basis_b));
  const ComplexMatrix local = frame.adjoint() * rho.matrix() * frame;

  const auto joint = [&local](std::span<const double> x) {
    const auto r1 = output_row(x[0], x[2], 0.0);
    const auto r2 = output_row(x[1], x[3], 0.0);
    const std::array<Complex, 4> r{r1[0] * r2[0], r1[0] * r2[1], r1[1] * r2[0], r1[1] * r2[1]};
    return quadratic_form(local, r);
  };
  const std::array<Axis, 4> axes{Axis::bounded(0.0, kPi), Axis::bounded(0.0, kPi),
                                 Axis::periodic(2.0 * kPi), Axis::periodic(2.0 * kPi)};
  // Near-maximally entangled states put the maximum on an almost flat ridge
  // along mixed directions; axis polls alone zigzag along it.
  SearchOptions opts;
  opts.diagonal_polls = true;
  const OptimumPoint best = maximize(joint, axes, cfg, opts);

  JointMaximum out;
  out.p12 = best.value;
  out.argmax.first = {best.x[0], best.x[2], 0.0, basis_a};
  out.argmax.second = {best.x[1], best.x[3], 0.0, basis_b};
  return out;
}

AlignmentDiagnostic p12_alignment_gap(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                      const ComplexMatrix& basis_b, const OptimizerConfig& cfg) {
  AlignmentDiagnostic d;
  d.aligned = p12_numeric(rho, basis_a, basis_b, cfg).p12;
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  d.free = p12_numeric(rho, eye, eye, cfg).p12;
  d.gap = d.free - d.aligned;
  return d;
}

FringeObservables analytic_observables(const WernerParams& params) {
  const SchmidtForm sf = schmidt_decompose(params.psi);
  FringeObservables obs;
  obs.v1 = visibility_analytic(partial_trace(werner_state(params), Arm::first));
  obs.p12 = p12_analytic(params);
  obs.argmax.first = {0.0, 0.0, 0.0, sf.basis_a};
  obs.argmax.second = {kPi, 0.0, 0.0, sf.basis_b};
  obs.method = FringeObservables::Method::analytic;
  return obs;
}

FringeObservables numeric_observables(const DensityMatrix& rho, const ComplexMatrix& basis_a,
                                      const ComplexMatrix& basis_b, const OptimizerConfig& cfg) {
  FringeObservables obs;
  obs.v1 = visibility_numeric(partial_trace(rho, Arm::first), cfg).v1;
  const JointMaximum jm = p12_numeric(rho, basis_a, basis_b, cfg);
  obs.p12 = jm.p12;
  obs.argmax = jm.argmax;
  obs.method = FringeObservables::Method::numeric;
  return obs;
}

}  // namespace fringelab
