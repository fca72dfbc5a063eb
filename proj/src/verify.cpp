#include "fringelab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "fringelab/entanglement.hpp"
#include "fringelab/error.hpp"
#include "fringelab/fringe.hpp"
#include "fringelab/interferometer.hpp"

namespace fringelab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Tracker {
  double worst = 0.0;
  int cases = 0;
  void add(double residual) {
    // NaN must register as a failure.
    worst = std::isnan(residual) || std::isnan(worst) ? std::numeric_limits<double>::quiet_NaN()
                                                      : std::max(worst, residual);
    ++cases;
  }
};

TransducerSettings random_settings(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> mu(0.0, kPi);
  return {mu(rng), angle(rng), angle(rng), random_unitary2(rng())};
}

double linspace(int i, int n, double lo, double hi) { return lo + (hi - lo) * i / (n - 1); }

Tracker unitarity_suite() {
  Tracker t;
  std::mt19937_64 rng(101);
  for (int i = 0; i < 200; ++i) {
    const ComplexMatrix u = transducer_unitary(random_settings(rng));
    t.add(std::max(unitarity_defect(u), std::abs(determinant2(u) - 1.0)));
  }
  return t;
}

Tracker marginals_suite() {
  Tracker t;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = werner_state(werner_params(unit(rng), random_haar_pure(rng())));
    const TransducerSettings s1 = random_settings(rng);
    const TransducerSettings s2 = random_settings(rng);
    const DetectionProbabilities p = detection_probabilities(rho, s1, s2);
    const double total = p.u1u2 + p.u1l2 + p.l1u2 + p.l1l2;
    const double arm1 = single_detection_probability(partial_trace(rho, Arm::first), s1);
    const double arm2 = single_detection_probability(partial_trace(rho, Arm::second), s2);
    t.add(std::max({std::abs(total - 1.0), std::abs(p.u1 - arm1), std::abs(p.u2 - arm2),
                    std::abs(p.u1 + p.l1 - 1.0), std::abs(p.u2 + p.l2 - 1.0)}));
  }
  return t;
}

Tracker joint_visibility_suite() {
  Tracker t;
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      const double p = linspace(i, 11, 0.0, 1.0);
      const WernerParams params = werner_params(p, schmidt_aligned(linspace(j, 11, 0.5, 1.0)));
      const double v1 = visibility_analytic(partial_trace(werner_state(params), Arm::first));
      t.add(std::abs(p12_analytic(params) - v1 / 2.0 - (p + 1.0) / 4.0));
    }
  }
  return t;
}

Tracker purity_suite() {
  Tracker t;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = i % 2 == 0 ? werner_state(werner_params(unit(rng), random_haar_pure(rng())))
                                         : gisin_state({unit(rng), unit(rng)});
    const DensityMatrix rho1 = partial_trace(rho, Arm::first);
    const double v1 = visibility_analytic(rho1);
    t.add(std::abs(v1 * v1 - (2.0 * purity(rho1) - 1.0)));
  }
  return t;
}

Tracker oracle_suite(const ComplexMatrix& flip) {
  Tracker t;
  const auto check = [&](const WernerParams& params) {
    const double est = estimate_concurrence(analytic_observables(params)).estimated_c;
    t.add(std::abs(est - wootters_concurrence(werner_state(params), flip)));
  };
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 11; ++j) {
      check(werner_params(linspace(i, 21, 0.0, 1.0), schmidt_aligned(linspace(j, 11, 0.5, 1.0))));
    }
  }
  // Pure parts in generic local bases; aligned states alone cannot tell
  // some wrong spin-flip operators from the right one.
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 64; ++i) check(werner_params(unit(rng), random_haar_pure(rng())));
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"unitarity", "marginals", "eq17", "purity", "oracle"};
  return names;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& opts) {
  if (opts.suite && std::find(suite_names().begin(), suite_names().end(), *opts.suite) == suite_names().end()) {
    throw Error(ErrorCode::InvalidParameter, "unknown suite '" + *opts.suite + "'");
  }
  const std::vector<std::pair<std::string, std::pair<double, std::function<Tracker()>>>> suites{
      {"unitarity", {1e-12, unitarity_suite}},
      {"marginals", {1e-12, marginals_suite}},
      {"eq17", {1e-10, joint_visibility_suite}},
      {"purity", {1e-12, purity_suite}},
      {"oracle", {1e-8, [&] { return oracle_suite(opts.flip); }}},
  };
  std::vector<SuiteResult> out;
  for (const auto& [name, limits] : suites) {
    if (opts.suite && *opts.suite != name) continue;
    const Tracker t = limits.second();
    out.push_back({name, t.worst <= limits.first, t.worst, limits.first, t.cases});
  }
  return out;
}

}  // namespace fringelab
