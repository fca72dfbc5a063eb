#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fringelab/entanglement.hpp"
#include "fringelab/error.hpp"
#include "support.hpp"

using namespace fringelab;

namespace {

WernerParams aligned(double p, double alpha2) { return werner_params(p, schmidt_aligned(alpha2)); }

FringeObservables obs(double v1, double p12) {
  FringeObservables o;
  o.v1 = v1;
  o.p12 = p12;
  return o;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidPlan;
}

}  // namespace

TEST_CASE("concurrence examples") {
  CHECK(std::abs(wootters_concurrence(DensityMatrix::from_pure(singlet())) - 1.0) < 1e-12);
  CHECK(wootters_concurrence(DensityMatrix::from_pure(PureState({1.0, 0.0, 0.0, 0.0}))) == 0.0);
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.6, 1.0}) {
    const double expect = std::max((3.0 * p - 1.0) / 2.0, 0.0);
    CHECK(std::abs(wootters_concurrence(werner_state(werner_params(p, singlet()))) - expect) < 1e-12);
  }
}

TEST_CASE("concurrence matches the characteristic-polynomial oracle on random states") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const oracle::Mat m = oracle::random_density(rng, 4);
    CHECK(std::abs(wootters_concurrence(DensityMatrix(support::from_oracle(m))) - oracle::wootters_charpoly(m)) <
          1e-7);
  }
  // Pure states: C = 2 |psi00 psi11 - psi01 psi10|. The characteristic
  // polynomial has a triple root at zero here and is no use as a reference.
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PureState psi = random_haar_pure(seed);
    const double expect = 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
    CHECK(std::abs(wootters_concurrence(DensityMatrix::from_pure(psi)) - expect) < 1e-10);
  }
}

TEST_CASE("pure-state concurrence is 2 |alpha beta|") {
  for (std::uint64_t seed = 200; seed < 300; ++seed) {
    const PureState psi = random_haar_pure(seed);
    const SchmidtForm sf = schmidt_decompose(psi);
    CHECK(std::abs(wootters_concurrence(DensityMatrix::from_pure(psi)) - 2.0 * std::abs(sf.alpha * sf.beta)) < 1e-10);
  }
}

TEST_CASE("property: concurrence is invariant under local unitaries") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = trial % 2 == 0 ? support::random_density(rng, 4)
                                             : werner_state(werner_params(0.3 + 0.7 * (trial / 200.0),
                                                                          random_haar_pure(rng())));
    const ComplexMatrix u = kron(random_unitary2(rng()), random_unitary2(rng()));
    ComplexMatrix turned = u * rho.matrix() * u.adjoint();
    for (std::size_t i = 0; i < 4; ++i) {
      turned(i, i) = turned(i, i).real();
      for (std::size_t j = i + 1; j < 4; ++j) turned(j, i) = std::conj(turned(i, j));
    }
    CHECK(std::abs(wootters_concurrence(DensityMatrix(turned)) - wootters_concurrence(rho)) < 1e-9);
  }
}

TEST_CASE("a broken spin flip changes the concurrence of generic states") {
  const ComplexMatrix broken(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0});
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const DensityMatrix pure = DensityMatrix::from_pure(random_haar_pure(seed));
    worst = std::max(worst, std::abs(wootters_concurrence(pure, broken) - wootters_concurrence(pure)));
  }
  CHECK(worst > 1e-3);
  CHECK(code_of([] {
          wootters_concurrence(DensityMatrix::maximally_mixed(4), ComplexMatrix(2, 2, {0.0, Complex(0, 1), 1.0, 0.0}));
        }) == ErrorCode::InvalidParameter);
}

TEST_CASE("closed-form werner concurrence") {
  CHECK(std::abs(werner_concurrence_closed(werner_params(1.0, singlet())) - 1.0) < 1e-15);
  CHECK(std::abs(werner_concurrence_closed(werner_params(0.5, singlet())) - 0.25) < 1e-15);
  CHECK(std::abs(werner_concurrence_closed(aligned(0.9, 0.9)) - 0.49) < 1e-15);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 10; ++j) {
      const WernerParams params = aligned(0.05 * i, 0.5 + 0.05 * j);
      const double oc = oracle::werner_canonical_concurrence(params.p, 0.5 + 0.05 * j);
      CHECK(std::abs(werner_concurrence_closed(params) - oc) < 1e-12);
      CHECK(std::abs(wootters_concurrence(werner_state(params)) - werner_concurrence_closed(params)) < 1e-9);
    }
}

TEST_CASE("spin-flip spectrum of werner states") {
  const auto one = sqrt_eigenvalues_rho_rhotilde(werner_params(1.0, singlet()));
  CHECK(std::abs(one[0] - 1.0) < 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(one[k]) < 1e-12);

  for (double l : sqrt_eigenvalues_rho_rhotilde(werner_params(0.0, singlet()))) CHECK(std::abs(l - 0.25) < 1e-12);

  const auto mid = sqrt_eigenvalues_rho_rhotilde(aligned(0.6, 0.8));
  std::array<double, 4> expect{0.1, 0.1, std::sqrt(0.1276) - 0.24, std::sqrt(0.1276) + 0.24};
  std::sort(expect.rbegin(), expect.rend());
  for (int k = 0; k < 4; ++k) CHECK(std::abs(mid[k] - expect[k]) < 1e-9);
}

TEST_CASE("spin-flip spectrum matches the canonical multiset") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const WernerParams params = werner_params(0.01 * static_cast<double>(seed), random_haar_pure(seed));
    const WernerCanonical c = werner_canonical(params);
    const double r = std::sqrt(c.x * c.y);
    std::array<double, 4> expect{c.w, c.w, r - std::abs(c.z), r + std::abs(c.z)};
    std::sort(expect.rbegin(), expect.rend());
    const auto got = sqrt_eigenvalues_rho_rhotilde(params);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - expect[k]) < 1e-9);
  }
}

TEST_CASE("estimate_p examples") {
  CHECK(std::abs(estimate_p(obs(0.0, 0.5)) - 1.0) < 1e-15);
  CHECK(std::abs(estimate_p(obs(0.0, 0.25))) < 1e-15);
  CHECK(std::abs(estimate_p(obs(1.0, 1.0)) - 1.0) < 1e-15);
  CHECK(code_of([] { estimate_p(obs(0.0, 0.6)); }) == ErrorCode::InconsistentObservables);
  CHECK(code_of([] { estimate_p(obs(0.5, 0.2)); }) == ErrorCode::InconsistentObservables);
}

TEST_CASE("estimate_concurrence examples") {
  CHECK(std::abs(estimate_concurrence(obs(0.0, 0.5)).estimated_c - 1.0) < 1e-15);
  CHECK(std::abs(estimate_concurrence(obs(1.0, 1.0)).estimated_c) < 1e-15);
  const ConcurrenceReport r = estimate_concurrence(obs(0.0, 0.375));
  CHECK(std::abs(r.estimated_c - 0.25) < 1e-15);
  CHECK(std::abs(r.estimated_p - 0.5) < 1e-15);
  CHECK(std::abs(r.feasibility - 0.5) < 1e-15);
  CHECK_FALSE(r.oracle_c.has_value());

  const ConcurrenceReport sep = estimate_concurrence(obs(0.0, 0.3));
  CHECK(sep.signed_c < 0.0);
  CHECK(sep.estimated_c == 0.0);

  CHECK(code_of([] { estimate_concurrence(obs(0.5, 0.5)); }) == ErrorCode::FeasibilityViolation);
}

TEST_CASE("estimate_concurrence recovers p and the oracle on werner observables") {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 10; ++j) {
      const WernerParams params = aligned(0.05 * i, 0.5 + 0.05 * j);
      const ConcurrenceReport r = estimate_concurrence(analytic_observables(params), werner_state(params));
      REQUIRE(r.oracle_c.has_value());
      CHECK(std::abs(r.estimated_c - *r.oracle_c) < 1e-8);
      CHECK(std::abs(r.estimated_p - params.p) < 1e-8);
      CHECK(r.feasibility >= -1e-8);
      CHECK(std::abs(r.feasibility - (params.p - r.inputs.v1)) < 1e-12);
    }
}

TEST_CASE("property: estimated concurrence is nondecreasing in p") {
  for (int j = 0; j <= 10; ++j) {
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
      const double c = estimate_concurrence(analytic_observables(aligned(0.05 * i, 0.5 + 0.05 * j))).estimated_c;
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("property: singlet threshold at p = 1/3") {
  for (int i = 0; i <= 30; ++i) {
    const double p = i / 30.0;
    const double c = estimate_concurrence(analytic_observables(werner_params(p, singlet()))).estimated_c;
    if (p <= 1.0 / 3.0 + 1e-12) {
      CHECK(c < 1e-8);
    } else {
      CHECK(c > 0.0);
    }
    CHECK(std::abs(c - std::max((3.0 * p - 1.0) / 2.0, 0.0)) < 1e-8);
  }
}

TEST_CASE("signed concurrence floors the square root") {
  CHECK(std::abs(signed_concurrence(0.0, 0.375) - 0.25) < 1e-15);
  CHECK(std::isfinite(signed_concurrence(0.9, 0.3)));
}

TEST_CASE("two-parameter inversion: werner family") {
  const auto [v1, p12] = family_observables(TwoParameterFamily::werner_fixed_alpha, 0.7, 0.75, {});
  const InversionResult r = invert_two_parameter_family(v1, p12, TwoParameterFamily::werner_fixed_alpha, {});
  CHECK(std::abs(r.best.param1 - 0.7) < 1e-6);
  CHECK(std::abs(r.best.param2 - 0.75) < 1e-6);
  CHECK(std::abs(r.best.concurrence - wootters_concurrence(family_state(TwoParameterFamily::werner_fixed_alpha, 0.7, 0.75))) < 1e-6);
  CHECK_FALSE(r.ambiguous);

  const InversionResult zero = invert_two_parameter_family(0.0, 0.25, TwoParameterFamily::werner_fixed_alpha, {});
  CHECK(std::abs(zero.best.param1) < 1e-6);
  CHECK(zero.concurrence_max < 1e-6);
}

TEST_CASE("two-parameter inversion: gisin family") {
  const double truth = wootters_concurrence(gisin_state({0.3, 0.8}));
  CHECK(std::abs(truth - std::max(2.0 * 0.8 * std::sqrt(0.21) - 0.2, 0.0)) < 1e-12);
  const auto [v1, p12] = family_observables(TwoParameterFamily::gisin, 0.3, 0.8, {});
  const InversionResult r = invert_two_parameter_family(v1, p12, TwoParameterFamily::gisin, {});
  // Reported in the half a >= 1/2 of the a <-> 1 - a mirror.
  CHECK(std::abs(r.best.param1 - 0.7) < 1e-6);
  CHECK(std::abs(r.best.param2 - 0.8) < 1e-6);
  CHECK(std::abs(r.best.concurrence - truth) < 1e-6);
  CHECK(r.best.residual < OptimizerConfig{}.tolerance);
  CHECK(r.concurrence_min <= r.best.concurrence);
  CHECK(r.concurrence_max >= r.best.concurrence);
}

TEST_CASE("gisin observables do not separate x from (1 - x)/2 at a = 1/2") {
  const OptimizerConfig cfg;
  const auto one = family_observables(TwoParameterFamily::gisin, 0.5, 0.7, cfg);
  const auto two = family_observables(TwoParameterFamily::gisin, 0.5, 0.15, cfg);
  CHECK(std::abs(one[0] - two[0]) < 1e-12);
  CHECK(std::abs(one[1] - two[1]) < 1e-8);
  const InversionResult r = invert_two_parameter_family(one[0], one[1], TwoParameterFamily::gisin, cfg);
  CHECK(r.ambiguous);
  bool has_truth = false;
  for (const auto& s : r.solutions) has_truth |= std::abs(s.param1 - 0.5) < 1e-5 && std::abs(s.param2 - 0.7) < 1e-5;
  CHECK(has_truth);
  CHECK(r.concurrence_max - r.concurrence_min > 0.1);
}

TEST_CASE("inconsistent observables are rejected by the inversion") {
  CHECK(code_of([] { invert_two_parameter_family(1.0, 0.25, TwoParameterFamily::werner_fixed_alpha, {}); }) ==
        ErrorCode::NoConsistentState);
}
