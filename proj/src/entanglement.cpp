#include "fringelab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fringelab/error.hpp"
#include "fringelab/linalg.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab {

std::array<double, 4> spin_flip_singular_values(const DensityMatrix& rho, const ComplexMatrix& flip) {
  if (rho.dim() != 4) throw Error(ErrorCode::InvalidDimension, "concurrence needs a two-qubit state");
  const ComplexMatrix s = kron(flip, flip);
  for (const Complex c : s.entries()) {
    if (c.imag() != 0.0) throw Error(ErrorCode::InvalidParameter, "spin-flip operator must be real");
  }

  const auto eig = linalg::eigen_hermitian(rho.matrix());
  const double cutoff = tol::rank_cutoff * std::max(1.0, eig.values.back());
  ComplexMatrix w(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double lambda = eig.values[k];
    if (lambda <= cutoff) continue;
    const double root = std::sqrt(lambda);
    for (std::size_t r = 0; r < 4; ++r) w(r, k) = eig.vectors(r, k) * root;
  }
  const auto sv = linalg::singular_values(w.transpose() * s * w);
  return {sv[0], sv[1], sv[2], sv[3]};
}

double wootters_concurrence(const DensityMatrix& rho, const ComplexMatrix& flip) {
  const auto l = spin_flip_singular_values(rho, flip);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double werner_concurrence_closed(const WernerParams& params) {
  const SchmidtForm sf = schmidt_decompose(params.psi);
  const double ab = std::abs(sf.alpha * sf.beta);
  return 2.0 * std::max(params.p * ab - (1.0 - params.p) / 4.0, 0.0);
}

std::array<double, 4> sqrt_eigenvalues_rho_rhotilde(const WernerParams& params) {
  return spin_flip_singular_values(werner_state(params));
}

double estimate_p(const FringeObservables& obs) {
  const double p = 4.0 * obs.p12 - 2.0 * obs.v1 - 1.0;
  if (p < -tol::p_range || p > 1.0 + tol::p_range) {
    std::ostringstream os;
    os << "observables (V1=" << obs.v1 << ", P12=" << obs.p12 << ") give p = " << p
       << ", outside the Werner family";
    throw Error(ErrorCode::InconsistentObservables, os.str());
  }
  return p;
}

double signed_concurrence(double v1, double p12) {
  const double product = (4.0 * p12 - 3.0 * v1 - 1.0) * (4.0 * p12 - v1 - 1.0);
  return 2.0 * p12 - v1 - 1.0 + std::sqrt(std::max(product, 0.0));
}

ConcurrenceReport estimate_concurrence(const FringeObservables& obs) {
  ConcurrenceReport report;
  report.inputs = obs;
  report.estimated_p = 4.0 * obs.p12 - 2.0 * obs.v1 - 1.0;
  report.feasibility = 4.0 * obs.p12 - 3.0 * obs.v1 - 1.0;
  const double product = report.feasibility * (4.0 * obs.p12 - obs.v1 - 1.0);
  if (report.feasibility < -tol::feasibility_violation || product < -tol::sqrt_truncation) {
    std::ostringstream os;
    os << "4 P12 - 3 V1 - 1 = " << report.feasibility << " (V1=" << obs.v1 << ", P12=" << obs.p12
       << "): observables are inconsistent with a Werner-class state";
    throw Error(ErrorCode::FeasibilityViolation, os.str());
  }
  report.signed_c = signed_concurrence(obs.v1, obs.p12);
  report.estimated_c = std::max(report.signed_c, 0.0);
  return report;
}

ConcurrenceReport estimate_concurrence(const FringeObservables& obs, const DensityMatrix& truth) {
  ConcurrenceReport report = estimate_concurrence(obs);
  report.oracle_c = wootters_concurrence(truth);
  return report;
}

DensityMatrix family_state(TwoParameterFamily family, double param1, double param2) {
  switch (family) {
    case TwoParameterFamily::werner_fixed_alpha:
      return werner_state(werner_params(param1, schmidt_aligned(param2)));
    case TwoParameterFamily::gisin:
      return gisin_state({param1, param2});
  }
  throw Error(ErrorCode::InvalidParameter, "unknown family");
}

std::array<double, 2> family_observables(TwoParameterFamily family, double param1, double param2,
                                         const OptimizerConfig& cfg) {
  if (family == TwoParameterFamily::werner_fixed_alpha) {
    const WernerParams params = werner_params(param1, schmidt_aligned(param2));
    return {visibility_analytic(partial_trace(werner_state(params), Arm::first)), p12_analytic(params)};
  }
  const DensityMatrix rho = gisin_state({param1, param2});
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  return {visibility_analytic(partial_trace(rho, Arm::first)), p12_numeric(rho, eye, eye, cfg).p12};
}

InversionResult invert_two_parameter_family(double v1, double p12, TwoParameterFamily family,
                                            const OptimizerConfig& cfg) {
  validate(cfg);
  // Inner P12 searches for the numeric family run on a coarser grid; the
  // outer refinement steps well past cfg.tolerance so accepted residuals are
  // not limited by the step floor.
  OptimizerConfig forward_cfg = cfg;
  forward_cfg.grid_points_per_angle = 8;
  forward_cfg.tolerance = std::min(cfg.tolerance, 1e-10);
  OptimizerConfig outer_cfg = cfg;
  outer_cfg.tolerance = cfg.tolerance * 1e-3;

  const auto objective = [&](std::span<const double> t) {
    const auto fwd = family_observables(family, t[0], t[1], forward_cfg);
    // The norm, not its square: squared residuals near the target sit
    // below the optimizer's tie resolution.
    return -std::hypot(fwd[0] - v1, fwd[1] - p12);
  };
  // Search the fundamental half of the mirrored axis only; mirrored grid
  // copies would otherwise use up refinement starts.
  const bool werner = family == TwoParameterFamily::werner_fixed_alpha;
  const std::array<Axis, 2> axes{werner ? Axis::bounded(0.0, 1.0) : Axis::bounded(0.5, 1.0),
                                 werner ? Axis::bounded(0.5, 1.0) : Axis::bounded(0.0, 1.0)};
  SearchOptions opts;
  opts.diagonal_polls = true;
  const auto optima = local_maxima(objective, axes, outer_cfg, 4, opts);

  InversionResult result;
  double best_residual = -optima.front().value;
  for (const auto& opt : optima) {
    const double residual = -opt.value;
    best_residual = std::min(best_residual, residual);
    if (!(residual < cfg.tolerance)) continue;
    InversionSolution s;
    s.param1 = opt.x[0];
    s.param2 = opt.x[1];
    if (werner) {
      s.param2 = std::max(s.param2, 1.0 - s.param2);
    } else {
      s.param1 = std::max(s.param1, 1.0 - s.param1);
    }
    s.residual = residual;
    const bool duplicate = std::any_of(result.solutions.begin(), result.solutions.end(), [&](const auto& o) {
      return std::abs(o.param1 - s.param1) < 1e-6 && std::abs(o.param2 - s.param2) < 1e-6;
    });
    if (duplicate) continue;
    s.concurrence = wootters_concurrence(family_state(family, s.param1, s.param2));
    result.solutions.push_back(s);
  }
  if (result.solutions.empty()) {
    std::ostringstream os;
    os << "no family member reproduces (V1=" << v1 << ", P12=" << p12 << "); best residual " << best_residual;
    throw Error(ErrorCode::NoConsistentState, os.str());
  }
  std::stable_sort(result.solutions.begin(), result.solutions.end(),
                   [](const auto& a, const auto& b) { return a.residual < b.residual; });
  result.best = result.solutions.front();
  result.ambiguous = result.solutions.size() > 1;
  const auto [lo, hi] = std::minmax_element(result.solutions.begin(), result.solutions.end(),
                                            [](const auto& a, const auto& b) { return a.concurrence < b.concurrence; });
  result.concurrence_min = lo->concurrence;
  result.concurrence_max = hi->concurrence;
  return result;
}

}  // namespace fringelab
