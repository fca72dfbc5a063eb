#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fringelab/error.hpp"
#include "fringelab/optimize.hpp"

using namespace fringelab;

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(OptimizerConfig{}));
  CHECK_THROWS_AS(validate(OptimizerConfig{7, 100, 1e-8}), Error);
  CHECK_THROWS_AS(validate(OptimizerConfig{16, 0, 1e-8}), Error);
  CHECK_THROWS_AS(validate(OptimizerConfig{16, 100, 0.0}), Error);
  CHECK_THROWS_AS(validate(OptimizerConfig{16, 100, std::nan("")}), Error);
}

TEST_CASE("smooth bounded maximum off the grid") {
  const Objective f = [](std::span<const double> x) {
    return -(x[0] - 0.3137) * (x[0] - 0.3137) - 2.0 * (x[1] + 0.271) * (x[1] + 0.271);
  };
  const std::array axes{Axis::bounded(-1.0, 1.0), Axis::bounded(-1.0, 1.0)};
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{});
  CHECK(std::abs(best.x[0] - 0.3137) < 1e-6);
  CHECK(std::abs(best.x[1] + 0.271) < 1e-6);
  CHECK(best.value > -1e-12);
}

TEST_CASE("maximum on a bound") {
  const Objective f = [](std::span<const double> x) { return x[0] + 0.1 * std::sin(3.0 * x[1]); };
  const std::array axes{Axis::bounded(0.0, 2.0), Axis::bounded(0.0, 1.0)};
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{});
  CHECK(best.x[0] == 2.0);
  CHECK(std::abs(best.x[1] - std::numbers::pi / 6.0) < 1e-6);
}

TEST_CASE("periodic axes wrap") {
  const double target = 2.0 * std::numbers::pi - 0.05;
  const Objective f = [&](std::span<const double> x) { return std::cos(x[0] - target); };
  const std::array axes{Axis::periodic(2.0 * std::numbers::pi)};
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{});
  CHECK(best.x[0] >= 0.0);
  CHECK(best.x[0] < 2.0 * std::numbers::pi);
  CHECK(std::abs(best.value - 1.0) < 1e-12);
}

TEST_CASE("multimodal objective finds the global maximum") {
  const Objective f = [](std::span<const double> x) {
    return std::sin(5.0 * x[0]) * std::cos(3.0 * x[1]) + 0.2 * x[0];
  };
  const std::array axes{Axis::bounded(0.0, 3.0), Axis::bounded(0.0, 3.0)};
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{32, 20000, 1e-10});
  double brute = -1e9;
  for (int i = 0; i <= 600; ++i)
    for (int j = 0; j <= 600; ++j) {
      const double x[2] = {3.0 * i / 600, 3.0 * j / 600};
      brute = std::max(brute, f(x));
    }
  CHECK(best.value >= brute - 1e-9);
}

TEST_CASE("flat objective keeps the lexicographically smallest grid point") {
  const Objective f = [](std::span<const double>) { return 0.25; };
  const std::array axes{Axis::bounded(0.0, 1.0), Axis::periodic(1.0)};
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{});
  CHECK(best.x[0] == 0.0);
  CHECK(best.x[1] == 0.0);
  CHECK(best.value == 0.25);
}

TEST_CASE("deterministic results") {
  const Objective f = [](std::span<const double> x) { return std::cos(x[0]) * std::sin(x[1] + 0.3) + 0.1 * x[2]; };
  const std::array axes{Axis::periodic(6.0), Axis::periodic(6.0), Axis::bounded(-1.0, 1.0)};
  const OptimumPoint a = maximize(f, axes, OptimizerConfig{});
  const OptimumPoint b = maximize(f, axes, OptimizerConfig{});
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
}

TEST_CASE("exhausted budget reports the best value") {
  const Objective f = [](std::span<const double> x) { return -(x[0] - 0.123456) * (x[0] - 0.123456); };
  const std::array axes{Axis::bounded(-1.0, 1.0)};
  try {
    maximize(f, axes, OptimizerConfig{8, 3, 1e-12});
    FAIL("expected OptimizerStalled");
  } catch (const OptimizerStalled& e) {
    CHECK(e.code() == ErrorCode::OptimizerStalled);
    CHECK(e.best_value() <= 0.0);
    CHECK(e.best_value() > -0.1);
  }
}

TEST_CASE("local maxima are all reported, best first") {
  const Objective f = [](std::span<const double> x) {
    return std::exp(-40.0 * (x[0] - 0.2) * (x[0] - 0.2)) + 0.5 * std::exp(-40.0 * (x[0] - 0.8) * (x[0] - 0.8));
  };
  const std::array axes{Axis::bounded(0.0, 1.0)};
  const auto peaks = local_maxima(f, axes, OptimizerConfig{}, 4);
  REQUIRE(peaks.size() >= 2);
  CHECK(std::abs(peaks[0].x[0] - 0.2) < 1e-4);
  bool found_second = false;
  for (const auto& p : peaks) found_second |= std::abs(p.x[0] - 0.8) < 1e-4;
  CHECK(found_second);
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i - 1].value >= peaks[i].value);
}

TEST_CASE("diagonal polls follow a tilted ridge") {
  const Objective f = [](std::span<const double> x) {
    const double u = x[0] - x[1], v = x[0] + x[1] - 1.0;
    return -1000.0 * u * u - 1e-3 * v * v;
  };
  const std::array axes{Axis::bounded(0.0, 1.0), Axis::bounded(0.0, 1.0)};
  SearchOptions opts;
  opts.diagonal_polls = true;
  const OptimumPoint best = maximize(f, axes, OptimizerConfig{}, opts);
  CHECK(best.value > -1e-9);
}

TEST_CASE("oversized grids are rejected") {
  const Objective f = [](std::span<const double>) { return 0.0; };
  const std::vector<Axis> axes(8, Axis::bounded(0.0, 1.0));
  CHECK_THROWS_AS(maximize(f, axes, OptimizerConfig{16, 100, 1e-8}), Error);
  CHECK_THROWS_AS(maximize(f, std::span<const Axis>{}, OptimizerConfig{}), Error);
}
