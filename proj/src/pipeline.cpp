#include "fringelab/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "fringelab/error.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " is outside [0, 1]";
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
}

WernerParams werner_like(const FamilyChoice& f) {
  switch (f.kind) {
    case FamilyKind::werner: return werner_params(f.p, schmidt_aligned(f.alpha2));
    case FamilyKind::pure: return werner_params(1.0, schmidt_aligned(f.alpha2));
    case FamilyKind::random: return werner_params(f.p, random_haar_pure(f.state_seed));
    case FamilyKind::gisin: break;
  }
  throw Error(ErrorCode::InvalidParameter, "family has no Werner form");
}

// Bootstrap stream kept apart from the count substreams of the same seed.
std::uint64_t bootstrap_seed(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

}  // namespace

void validate(const EstimateConfig& cfg) {
  const FamilyChoice& f = cfg.family;
  switch (f.kind) {
    case FamilyKind::werner:
      check_unit(f.p, "p");
      check_unit(f.alpha2, "alpha2");
      break;
    case FamilyKind::pure: check_unit(f.alpha2, "alpha2"); break;
    case FamilyKind::random: check_unit(f.p, "p"); break;
    case FamilyKind::gisin:
      check_unit(f.a, "a");
      check_unit(f.x, "x");
      if (cfg.shots) throw Error(ErrorCode::InvalidPlan, "shot mode is only available for Werner-class families");
      break;
  }
  validate(cfg.optimizer);
  if (cfg.shots && *cfg.shots < 1) throw Error(ErrorCode::InvalidPlan, "shots must be at least 1");
  if (!(cfg.detector.background >= 0.0 && cfg.detector.background <= 1.0)) {
    throw Error(ErrorCode::InvalidPlan, "detector background must lie in [0, 1]");
  }
}

DensityMatrix build_state(const FamilyChoice& family) {
  if (family.kind == FamilyKind::gisin) return gisin_state({family.a, family.x});
  return werner_state(werner_like(family));
}

EstimateOutcome run_estimate(const EstimateConfig& cfg) {
  validate(cfg);
  EstimateOutcome out;
  const DensityMatrix rho = build_state(cfg.family);

  if (cfg.family.kind == FamilyKind::gisin) {
    out.param1 = cfg.family.a;
    out.param2 = cfg.family.x;
    const auto fwd = family_observables(TwoParameterFamily::gisin, cfg.family.a, cfg.family.x, cfg.optimizer);
    InversionResult inv = invert_two_parameter_family(fwd[0], fwd[1], TwoParameterFamily::gisin, cfg.optimizer);
    ConcurrenceReport& r = out.report;
    r.inputs.v1 = fwd[0];
    r.inputs.p12 = fwd[1];
    r.inputs.method = FringeObservables::Method::numeric;
    r.estimated_p = 4.0 * fwd[1] - 2.0 * fwd[0] - 1.0;
    r.feasibility = 4.0 * fwd[1] - 3.0 * fwd[0] - 1.0;
    r.estimated_c = inv.best.concurrence;
    r.signed_c = inv.best.concurrence;
    r.oracle_c = wootters_concurrence(rho);
    out.inversion = std::move(inv);
    return out;
  }

  const WernerParams params = werner_like(cfg.family);
  const SchmidtForm sf = schmidt_decompose(params.psi);
  out.param1 = params.p;
  out.param2 = cfg.family.kind == FamilyKind::random ? std::norm(sf.alpha) : cfg.family.alpha2;

  if (!cfg.shots) {
    const FringeObservables obs = cfg.numeric ? numeric_observables(rho, sf.basis_a, sf.basis_b, cfg.optimizer)
                                              : analytic_observables(params);
    out.report = estimate_concurrence(obs, rho);
    return out;
  }

  ShotPlan plan = default_plan(sf.basis_a, sf.basis_b, *cfg.shots, cfg.seed);
  plan.detector = cfg.detector;
  const ObservableEstimates est = estimate_observables_from_counts(sample_counts(rho, plan), plan);
  const ConcurrenceWithError cwe = estimate_concurrence_with_error(est.v1, est.p12, bootstrap_seed(cfg.seed));

  ConcurrenceReport& r = out.report;
  r.inputs.v1 = est.v1.value;
  r.inputs.p12 = est.p12.value;
  r.inputs.argmax = {plan.settings.front().first, plan.settings.front().second};
  r.inputs.method = FringeObservables::Method::sampled;
  r.estimated_p = 4.0 * est.p12.value - 2.0 * est.v1.value - 1.0;
  r.feasibility = 4.0 * est.p12.value - 3.0 * est.v1.value - 1.0;
  r.signed_c = signed_concurrence(est.v1.value, est.p12.value);
  r.estimated_c = cwe.c.value;
  r.oracle_c = wootters_concurrence(rho);
  const double p_se = std::hypot(4.0 * est.p12.std_error, 2.0 * est.v1.std_error);
  if (r.estimated_p < -5.0 * p_se - tol::p_range || r.estimated_p > 1.0 + 5.0 * p_se + tol::p_range) {
    std::ostringstream os;
    os << "sampled observables give p = " << r.estimated_p << " (standard error " << p_se
       << "), outside the Werner family; too few shots?";
    throw Error(ErrorCode::InconsistentObservables, os.str());
  }
  if (cwe.feasibility_rate == 0.0) {
    std::ostringstream os;
    os << "no bootstrap resample satisfies 4 P12 - 3 V1 - 1 >= 0 (V1=" << est.v1.value << ", P12=" << est.p12.value
       << ")";
    throw Error(ErrorCode::FeasibilityViolation, os.str());
  }
  out.sampled = est;
  out.sampled_c = cwe;
  return out;
}

}  // namespace fringelab
