#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fringelab/error.hpp"
#include "fringelab/montecarlo.hpp"
#include "fringelab/pipeline.hpp"
#include "support.hpp"

using namespace fringelab;

namespace {

constexpr double pi = std::numbers::pi;

ShotPlan singlet_plan(std::int64_t shots, std::uint64_t seed) {
  const SchmidtForm sf = schmidt_decompose(singlet());
  return default_plan(sf.basis_a, sf.basis_b, shots, seed);
}

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("plan validation") {
  ShotPlan empty;
  empty.shots_per_setting = 10;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { validate(empty); }));
  ShotPlan plan = singlet_plan(10, 1);
  plan.shots_per_setting = 0;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { validate(plan); }));
  plan.shots_per_setting = 10;
  plan.detector.background = 1.5;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { validate(plan); }));
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { estimate_observables_from_counts({}, singlet_plan(10, 1)); }));
}

TEST_CASE("default plan layout") {
  const ShotPlan plan = singlet_plan(100, 3);
  CHECK(plan.settings.size() == 62);
  CHECK(plan.settings.front().first.mu == 0.0);
  CHECK(plan.settings.front().second.mu == pi);
  CHECK(plan.settings.back().first.mu == pi);
  for (const auto& sp : plan.settings) CHECK(sp.second.mu == pi);
}

TEST_CASE("maximally mixed counts follow the multinomial") {
  ShotPlan plan;
  plan.shots_per_setting = 1000000;
  plan.seed = 11;
  plan.settings.push_back({{0.7, 0.2, 0.1}, {1.1, -0.4, 0.3}});
  const auto records = sample_counts(DensityMatrix::maximally_mixed(4), plan);
  REQUIRE(records.size() == 1);
  CHECK(records[0].total() == plan.shots_per_setting);
  const double sigma = std::sqrt(0.25 * 0.75 / 1e6);
  for (std::int64_t c : records[0].counts) CHECK(std::abs(c / 1e6 - 0.25) < 5.0 * sigma);
}

TEST_CASE("a single shot lands in exactly one outcome") {
  ShotPlan plan = singlet_plan(1, 5);
  const auto records = sample_counts(werner_state(werner_params(0.7, singlet())), plan);
  for (const auto& r : records) {
    CHECK(r.total() == 1);
    CHECK(std::count(r.counts.begin(), r.counts.end(), 1) == 1);
  }
}

TEST_CASE("sampling is deterministic in the seed") {
  const DensityMatrix rho = werner_state(werner_params(0.6, singlet()));
  const auto a = sample_counts(rho, singlet_plan(5000, 42));
  const auto b = sample_counts(rho, singlet_plan(5000, 42));
  const auto c = sample_counts(rho, singlet_plan(5000, 43));
  bool same = true, differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    same &= a[k].counts == b[k].counts;
    differs |= a[k].counts != c[k].counts;
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("property: estimates do not depend on the order of the settings") {
  const DensityMatrix rho = werner_state(werner_params(0.6, random_haar_pure(9)));
  const SchmidtForm sf = schmidt_decompose(random_haar_pure(9));
  std::mt19937_64 shuffle_rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ShotPlan plan = default_plan(sf.basis_a, sf.basis_b, 20000, seed);
    plan.settings.push_back(plan.settings[5]);  // a repeated setting gets its own stream
    const auto base = estimate_observables_from_counts(sample_counts(rho, plan), plan);
    ShotPlan shuffled = plan;
    std::shuffle(shuffled.settings.begin(), shuffled.settings.end(), shuffle_rng);
    const auto other = estimate_observables_from_counts(sample_counts(rho, shuffled), shuffled);
    CHECK(base.v1.value == other.v1.value);
    CHECK(base.v1.std_error == other.v1.std_error);
    CHECK(base.p12.value == other.p12.value);
    CHECK(base.p12.std_error == other.p12.std_error);
  }
}

TEST_CASE("record validation") {
  const ShotPlan plan = singlet_plan(10, 1);
  auto records = sample_counts(DensityMatrix::maximally_mixed(4), plan);
  records[3].counts[0] += 1;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { estimate_observables_from_counts(records, plan); }));
  records.pop_back();
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { estimate_observables_from_counts(records, plan); }));
}

TEST_CASE("pure singlet at a million shots per setting") {
  const ShotPlan plan = singlet_plan(1000000, 2024);
  const auto est = estimate_observables_from_counts(sample_counts(DensityMatrix::from_pure(singlet()), plan), plan);
  CHECK(est.v1.value <= 3.0 * est.v1.std_error);
  CHECK(std::abs(est.p12.value - 0.5) <= 3.0 * est.p12.std_error);
  CHECK(est.v1.n_effective == 62 * 1000000);
}

TEST_CASE("exact probabilities reproduce the closed forms") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const WernerParams params = werner_params(0.05 * static_cast<double>(seed), random_haar_pure(seed));
    const SchmidtForm sf = schmidt_decompose(params.psi);
    const ShotPlan plan = default_plan(sf.basis_a, sf.basis_b, 1000, seed);
    const auto est = estimate_observables_from_probabilities(werner_state(params), plan);
    const FringeObservables exact = analytic_observables(params);
    CHECK(std::abs(est.v1.value - exact.v1) < 1e-12);
    CHECK(std::abs(est.p12.value - exact.p12) < 1e-12);
  }
}

TEST_CASE("maximally mixed state at the joint argmax") {
  ShotPlan plan = singlet_plan(100000, 8);
  plan.settings.resize(1);
  const auto est = estimate_observables_from_counts(sample_counts(DensityMatrix::maximally_mixed(4), plan), plan);
  CHECK(std::abs(est.p12.value - 0.25) < 5.0 * std::sqrt(0.25 * 0.75 / 1e5));
  CHECK(std::abs(est.p12.std_error - std::sqrt(0.25 * 0.75 / 1e5)) < 1e-4);
}

TEST_CASE("background mixes toward flat outcomes") {
  const WernerParams params = werner_params(0.8, singlet());
  ShotPlan plan = singlet_plan(1000, 1);
  plan.detector.background = 0.2;
  const auto est = estimate_observables_from_probabilities(werner_state(params), plan);
  CHECK(std::abs(est.p12.value - (0.8 * p12_analytic(params) + 0.2 * 0.25)) < 1e-12);
  plan.detector.background = 1.0;
  const auto flat = estimate_observables_from_probabilities(werner_state(params), plan);
  CHECK(std::abs(flat.p12.value - 0.25) < 1e-12);
  CHECK(flat.v1.value < 1e-12);
}

TEST_CASE("bootstrap with exact inputs returns the plug-in value") {
  const auto r = estimate_concurrence_with_error({0.0, 0.0, 1}, {0.375, 0.0, 1}, 3);
  CHECK(std::abs(r.c.value - 0.25) < 1e-15);
  CHECK(r.c.std_error == 0.0);
  CHECK(r.feasibility_rate == 1.0);
  CHECK(r.clamp_rate == 0.0);
  CHECK_THROWS_AS(estimate_concurrence_with_error({0.0, 0.1, 1}, {0.375, 0.1, 1}, 3, 1), Error);
}

TEST_CASE("bootstrap at the separability threshold clamps about half the resamples") {
  const auto r = estimate_concurrence_with_error({0.0, 0.0, 1}, {1.0 / 3.0, 1e-3, 1000000}, 17);
  CHECK(r.feasibility_rate > 0.99);
  CHECK(std::abs(r.clamp_rate - 0.5) < 0.05);
  CHECK(r.c.value > 0.0);
  CHECK(r.c.std_error > 0.0);
}

TEST_CASE("bootstrap is deterministic in its seed") {
  const auto a = estimate_concurrence_with_error({0.1, 0.01, 1}, {0.45, 0.01, 1}, 99);
  const auto b = estimate_concurrence_with_error({0.1, 0.01, 1}, {0.45, 0.01, 1}, 99);
  CHECK(a.c.value == b.c.value);
  CHECK(a.c.std_error == b.c.std_error);
}

TEST_CASE("werner p = 0.5 at a million shots") {
  EstimateConfig cfg;
  cfg.family = {FamilyKind::werner, 0.5, 0.5};
  cfg.shots = 1000000;
  cfg.seed = 7;
  const EstimateOutcome out = run_estimate(cfg);
  REQUIRE(out.sampled_c.has_value());
  CHECK(std::abs(out.report.estimated_c - 0.25) <= 3.0 * out.sampled_c->c.std_error);
  CHECK(out.sampled_c->feasibility_rate > 0.99);
}

TEST_CASE("property: standard errors shrink tenfold for a hundredfold budget") {
  const DensityMatrix rho = werner_state(werner_params(0.6, singlet()));
  double small_v = 0.0, small_p = 0.0, large_v = 0.0, large_p = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ShotPlan lo = singlet_plan(10000, seed);
    const ShotPlan hi = singlet_plan(1000000, seed);
    const auto a = estimate_observables_from_counts(sample_counts(rho, lo), lo);
    const auto b = estimate_observables_from_counts(sample_counts(rho, hi), hi);
    small_v += a.v1.std_error;
    small_p += a.p12.std_error;
    large_v += b.v1.std_error;
    large_p += b.p12.std_error;
  }
  for (double ratio : {small_v / large_v, small_p / large_p}) {
    CHECK(ratio > 10.0 / 1.5);
    CHECK(ratio < 10.0 * 1.5);
  }
}

TEST_CASE("pipeline shot-mode guards") {
  EstimateConfig cfg;
  cfg.family.kind = FamilyKind::gisin;
  cfg.shots = 1000;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { run_estimate(cfg); }));
  cfg.family.kind = FamilyKind::werner;
  cfg.shots = 0;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { run_estimate(cfg); }));
  cfg.shots = 1000;
  cfg.detector.background = -0.1;
  CHECK(throws_code(ErrorCode::InvalidPlan, [&] { run_estimate(cfg); }));
  cfg.detector.background = 0.0;
  cfg.shots = 1;
  CHECK(throws_code(ErrorCode::InconsistentObservables, [&] { run_estimate(cfg); }));
  cfg.shots = 1000;
  cfg.family.p = 1.5;
  CHECK(throws_code(ErrorCode::InvalidParameter, [&] { run_estimate(cfg); }));
}

TEST_CASE("pipeline reports the schmidt weight of random states") {
  EstimateConfig cfg;
  cfg.family.kind = FamilyKind::random;
  cfg.family.p = 0.9;
  cfg.family.state_seed = 5;
  const EstimateOutcome out = run_estimate(cfg);
  CHECK(std::abs(out.param2 - std::norm(schmidt_decompose(random_haar_pure(5)).alpha)) < 1e-15);
  REQUIRE(out.report.oracle_c.has_value());
  CHECK(std::abs(out.report.estimated_c - *out.report.oracle_c) < 1e-8);
}
