#include "fringelab/fringelab.h"

#include <algorithm>
#include <exception>
#include <string>
#include <vector>

#include "fringelab/entanglement.hpp"
#include "fringelab/error.hpp"
#include "fringelab/pipeline.hpp"
#include "fringelab/verify.hpp"

struct fl_state {
  fringelab::DensityMatrix rho;
};

struct fl_verify_result {
  std::vector<fringelab::SuiteResult> suites;
};

namespace {

using namespace fringelab;

thread_local std::string last_error;

fl_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return FL_INVALID_DIMENSION;
    case ErrorCode::InvalidParameter: return FL_INVALID_PARAMETER;
    case ErrorCode::NotHermitian: return FL_NOT_HERMITIAN;
    case ErrorCode::NotPositive: return FL_NOT_POSITIVE;
    case ErrorCode::NotNormalized: return FL_NOT_NORMALIZED;
    case ErrorCode::NonFinite: return FL_NON_FINITE;
    case ErrorCode::OptimizerStalled: return FL_OPTIMIZER_STALLED;
    case ErrorCode::InconsistentObservables: return FL_INCONSISTENT_OBSERVABLES;
    case ErrorCode::FeasibilityViolation: return FL_FEASIBILITY_VIOLATION;
    case ErrorCode::NoConsistentState: return FL_NO_CONSISTENT_STATE;
    case ErrorCode::InvalidPlan: return FL_INVALID_PLAN;
  }
  return FL_INTERNAL;
}

template <class F>
fl_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return FL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return FL_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FL_INTERNAL;
  }
}

template <class... Ptrs>
fl_status null_check(Ptrs... ptrs) {
  if (((ptrs == nullptr) || ...)) {
    last_error = "required pointer argument is NULL";
    return FL_NULL_ARGUMENT;
  }
  return FL_OK;
}

std::vector<Complex> read_complex(const double* data, std::size_t n) {
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {data[2 * i], data[2 * i + 1]};
  return out;
}

void write_complex(const ComplexMatrix& m, double* out) {
  std::size_t i = 0;
  for (const Complex c : m.entries()) {
    out[i++] = c.real();
    out[i++] = c.imag();
  }
}

ComplexMatrix read_basis(const double* basis) {
  if (basis == nullptr || std::all_of(basis, basis + 8, [](double v) { return v == 0.0; })) {
    return ComplexMatrix::identity(2);
  }
  return ComplexMatrix(2, 2, read_complex(basis, 4));
}

TransducerSettings read_settings(const fl_settings& s) {
  return {s.mu, s.phi_a, s.phi_b, read_basis(s.basis)};
}

void write_settings(const TransducerSettings& s, fl_settings* out) {
  if (out == nullptr) return;
  out->mu = s.mu;
  out->phi_a = s.phi_a;
  out->phi_b = s.phi_b;
  write_complex(s.input_basis, out->basis);
}

OptimizerConfig read_optimizer(const fl_optimizer* cfg) {
  OptimizerConfig out;
  if (cfg != nullptr) {
    out.grid_points_per_angle = cfg->grid_points_per_angle;
    out.refine_iterations = cfg->refine_iterations;
    out.tolerance = cfg->tolerance;
  }
  validate(out);
  return out;
}

void write_report(const ConcurrenceReport& r, fl_report* out) {
  out->v1 = r.inputs.v1;
  out->p12 = r.inputs.p12;
  out->estimated_p = r.estimated_p;
  out->estimated_c = r.estimated_c;
  out->signed_c = r.signed_c;
  out->feasibility = r.feasibility;
  out->has_oracle = r.oracle_c.has_value() ? 1 : 0;
  out->oracle_c = r.oracle_c.value_or(0.0);
}

fl_status make_state(fl_state** out, const auto& build) {
  if (fl_status s = null_check(out); s != FL_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new fl_state{build()}; });
}

}  // namespace

extern "C" {

const char* fl_status_name(fl_status status) {
  switch (status) {
    case FL_OK: return "Ok";
    case FL_INVALID_DIMENSION: return to_string(ErrorCode::InvalidDimension);
    case FL_INVALID_PARAMETER: return to_string(ErrorCode::InvalidParameter);
    case FL_NOT_HERMITIAN: return to_string(ErrorCode::NotHermitian);
    case FL_NOT_POSITIVE: return to_string(ErrorCode::NotPositive);
    case FL_NOT_NORMALIZED: return to_string(ErrorCode::NotNormalized);
    case FL_NON_FINITE: return to_string(ErrorCode::NonFinite);
    case FL_OPTIMIZER_STALLED: return to_string(ErrorCode::OptimizerStalled);
    case FL_INCONSISTENT_OBSERVABLES: return to_string(ErrorCode::InconsistentObservables);
    case FL_FEASIBILITY_VIOLATION: return to_string(ErrorCode::FeasibilityViolation);
    case FL_NO_CONSISTENT_STATE: return to_string(ErrorCode::NoConsistentState);
    case FL_INVALID_PLAN: return to_string(ErrorCode::InvalidPlan);
    case FL_NULL_ARGUMENT: return "NullArgument";
    case FL_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* fl_last_error(void) { return last_error.c_str(); }

const char* fl_version(void) { return FRINGELAB_VERSION; }

fl_status fl_state_from_matrix(size_t dim, const double* entries, fl_state** out) {
  if (fl_status s = null_check(entries); s != FL_OK) return s;
  return make_state(out, [&] {
    if (dim != 2 && dim != 4) throw Error(ErrorCode::InvalidDimension, "state dimension must be 2 or 4");
    return DensityMatrix(ComplexMatrix(dim, dim, read_complex(entries, dim * dim)));
  });
}

fl_status fl_state_werner(double p, const double* psi, fl_state** out) {
  if (fl_status s = null_check(psi); s != FL_OK) return s;
  return make_state(out, [&] { return werner_state(werner_params(p, PureState(read_complex(psi, 4)))); });
}

fl_status fl_state_werner_aligned(double p, double alpha2, fl_state** out) {
  return make_state(out, [&] { return werner_state(werner_params(p, schmidt_aligned(alpha2))); });
}

fl_status fl_state_gisin(double a, double x, fl_state** out) {
  return make_state(out, [&] { return gisin_state({a, x}); });
}

fl_status fl_state_random_pure(uint64_t seed, fl_state** out) {
  return make_state(out, [&] { return DensityMatrix::from_pure(random_haar_pure(seed)); });
}

void fl_state_free(fl_state* state) { delete state; }

size_t fl_state_dim(const fl_state* state) { return state == nullptr ? 0 : state->rho.dim(); }

fl_status fl_state_matrix(const fl_state* state, double* entries) {
  if (fl_status s = null_check(state, entries); s != FL_OK) return s;
  return guarded([&] { write_complex(state->rho.matrix(), entries); });
}

fl_status fl_state_partial_trace(const fl_state* state, int keep, fl_state** out) {
  if (fl_status s = null_check(state); s != FL_OK) return s;
  return make_state(out, [&] {
    if (keep != 0 && keep != 1) throw Error(ErrorCode::InvalidParameter, "keep must be 0 or 1");
    return partial_trace(state->rho, keep == 0 ? Arm::first : Arm::second);
  });
}

fl_status fl_purity(const fl_state* state, double* out) {
  if (fl_status s = null_check(state, out); s != FL_OK) return s;
  return guarded([&] { *out = purity(state->rho); });
}

fl_status fl_concurrence(const fl_state* state, double* out) {
  if (fl_status s = null_check(state, out); s != FL_OK) return s;
  return guarded([&] { *out = wootters_concurrence(state->rho); });
}

fl_status fl_visibility(const fl_state* rho1, double* out) {
  if (fl_status s = null_check(rho1, out); s != FL_OK) return s;
  return guarded([&] { *out = visibility_analytic(rho1->rho); });
}

fl_status fl_detection_probabilities(const fl_state* state, const fl_settings* first, const fl_settings* second,
                                     fl_probabilities* out) {
  if (fl_status s = null_check(state, first, second, out); s != FL_OK) return s;
  return guarded([&] {
    const DetectionProbabilities p =
        detection_probabilities(state->rho, read_settings(*first), read_settings(*second));
    *out = {p.u1, p.l1, p.u2, p.l2, p.u1u2, p.u1l2, p.l1u2, p.l1l2};
  });
}

fl_optimizer fl_optimizer_default(void) {
  const OptimizerConfig cfg;
  return {cfg.grid_points_per_angle, cfg.refine_iterations, cfg.tolerance};
}

fl_status fl_visibility_numeric(const fl_state* rho1, const fl_optimizer* cfg, double* out) {
  if (fl_status s = null_check(rho1, out); s != FL_OK) return s;
  return guarded([&] { *out = visibility_numeric(rho1->rho, read_optimizer(cfg)).v1; });
}

fl_status fl_p12_numeric(const fl_state* state, const double* basis_a, const double* basis_b,
                         const fl_optimizer* cfg, double* p12, fl_settings* argmax_first,
                         fl_settings* argmax_second) {
  if (fl_status s = null_check(state, p12); s != FL_OK) return s;
  return guarded([&] {
    const JointMaximum jm = p12_numeric(state->rho, read_basis(basis_a), read_basis(basis_b), read_optimizer(cfg));
    *p12 = jm.p12;
    write_settings(jm.argmax.first, argmax_first);
    write_settings(jm.argmax.second, argmax_second);
  });
}

fl_status fl_estimate_concurrence(double v1, double p12, fl_report* out) {
  if (fl_status s = null_check(out); s != FL_OK) return s;
  return guarded([&] {
    FringeObservables obs;
    obs.v1 = v1;
    obs.p12 = p12;
    write_report(estimate_concurrence(obs), out);
  });
}

fl_estimate_config fl_estimate_config_default(void) {
  fl_estimate_config cfg{};
  const FamilyChoice f;
  cfg.family = FL_FAMILY_WERNER;
  cfg.p = f.p;
  cfg.alpha2 = f.alpha2;
  cfg.a = f.a;
  cfg.x = f.x;
  cfg.optimizer = fl_optimizer_default();
  return cfg;
}

fl_status fl_estimate(const fl_estimate_config* cfg, fl_estimate_result* out) {
  if (fl_status s = null_check(cfg, out); s != FL_OK) return s;
  return guarded([&] {
    EstimateConfig ec;
    switch (cfg->family) {
      case FL_FAMILY_WERNER: ec.family.kind = FamilyKind::werner; break;
      case FL_FAMILY_GISIN: ec.family.kind = FamilyKind::gisin; break;
      case FL_FAMILY_PURE: ec.family.kind = FamilyKind::pure; break;
      case FL_FAMILY_RANDOM: ec.family.kind = FamilyKind::random; break;
      default: throw Error(ErrorCode::InvalidParameter, "unknown family");
    }
    ec.family.p = cfg->p;
    ec.family.alpha2 = cfg->alpha2;
    ec.family.a = cfg->a;
    ec.family.x = cfg->x;
    ec.family.state_seed = cfg->seed;
    if (cfg->has_shots) ec.shots = cfg->shots;
    ec.seed = cfg->seed;
    ec.numeric = cfg->numeric != 0;
    ec.optimizer = read_optimizer(&cfg->optimizer);
    ec.detector.background = cfg->background;

    const EstimateOutcome r = run_estimate(ec);
    fl_estimate_result res{};
    res.param1 = r.param1;
    res.param2 = r.param2;
    write_report(r.report, &res.report);
    if (r.sampled) {
      res.sampled = 1;
      res.v1_std_error = r.sampled->v1.std_error;
      res.p12_std_error = r.sampled->p12.std_error;
      res.c_std_error = r.sampled_c->c.std_error;
      res.feasibility_rate = r.sampled_c->feasibility_rate;
      res.clamp_rate = r.sampled_c->clamp_rate;
      res.shots_per_setting = *ec.shots;
      res.settings = r.sampled->v1.n_effective / *ec.shots;
    }
    if (r.inversion) {
      res.inverted = 1;
      res.ambiguous = r.inversion->ambiguous ? 1 : 0;
      res.solutions = static_cast<int64_t>(r.inversion->solutions.size());
      res.inv_param1 = r.inversion->best.param1;
      res.inv_param2 = r.inversion->best.param2;
      res.inv_residual = r.inversion->best.residual;
    }
    *out = res;
  });
}

fl_status fl_invert(double v1, double p12, fl_two_parameter_family family, const fl_optimizer* cfg,
                    fl_inversion* out) {
  if (fl_status s = null_check(out); s != FL_OK) return s;
  return guarded([&] {
    TwoParameterFamily fam;
    switch (family) {
      case FL_INVERT_WERNER: fam = TwoParameterFamily::werner_fixed_alpha; break;
      case FL_INVERT_GISIN: fam = TwoParameterFamily::gisin; break;
      default: throw Error(ErrorCode::InvalidParameter, "unknown family");
    }
    const InversionResult r = invert_two_parameter_family(v1, p12, fam, read_optimizer(cfg));
    *out = {r.best.param1, r.best.param2, r.best.residual, r.best.concurrence, r.ambiguous ? 1 : 0,
            static_cast<int64_t>(r.solutions.size())};
  });
}

fl_status fl_sample_counts(const fl_state* state, const fl_settings* settings, size_t n, int64_t shots,
                           uint64_t seed, double background, int64_t* counts) {
  if (fl_status s = null_check(state, settings, counts); s != FL_OK) return s;
  return guarded([&] {
    ShotPlan plan;
    plan.shots_per_setting = shots;
    plan.seed = seed;
    plan.detector.background = background;
    for (size_t i = 0; i < n; ++i) {
      plan.settings.push_back({read_settings(settings[2 * i]), read_settings(settings[2 * i + 1])});
    }
    const auto records = sample_counts(state->rho, plan);
    for (size_t i = 0; i < n; ++i) std::copy(records[i].counts.begin(), records[i].counts.end(), counts + 4 * i);
  });
}

fl_status fl_verify_run(const char* suite, const double* flip, fl_verify_result** out) {
  if (fl_status s = null_check(out); s != FL_OK) return s;
  *out = nullptr;
  return guarded([&] {
    VerifyOptions opts;
    if (suite != nullptr) opts.suite = suite;
    if (flip != nullptr) opts.flip = ComplexMatrix(2, 2, read_complex(flip, 4));
    *out = new fl_verify_result{run_verify(opts)};
  });
}

size_t fl_verify_count(const fl_verify_result* result) { return result == nullptr ? 0 : result->suites.size(); }

fl_status fl_verify_entry(const fl_verify_result* result, size_t index, fl_suite_entry* out) {
  if (fl_status s = null_check(result, out); s != FL_OK) return s;
  if (index >= result->suites.size()) {
    last_error = "suite index out of range";
    return FL_INVALID_PARAMETER;
  }
  const SuiteResult& r = result->suites[index];
  *out = {r.name.c_str(), r.passed ? 1 : 0, r.worst_residual, r.threshold, r.cases};
  return FL_OK;
}

int fl_verify_all_passed(const fl_verify_result* result) {
  if (result == nullptr) return 0;
  return std::all_of(result->suites.begin(), result->suites.end(), [](const auto& s) { return s.passed; }) ? 1 : 0;
}

void fl_verify_free(fl_verify_result* result) { delete result; }

}  // extern "C"
