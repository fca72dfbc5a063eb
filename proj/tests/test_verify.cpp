#include <doctest.h>

#include <cmath>

#include "fringelab/error.hpp"
#include "fringelab/verify.hpp"

using namespace fringelab;

TEST_CASE("all suites pass on the default build") {
  const auto results = run_verify({});
  REQUIRE(results.size() == suite_names().size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    CAPTURE(results[i].name);
    CHECK(results[i].name == suite_names()[i]);
    CHECK(results[i].passed);
    CHECK(results[i].worst_residual <= results[i].threshold);
    CHECK(results[i].cases > 0);
  }
}

TEST_CASE("suite filter runs one suite") {
  VerifyOptions opts;
  opts.suite = "eq17";
  const auto results = run_verify(opts);
  REQUIRE(results.size() == 1);
  CHECK(results[0].name == "eq17");
  CHECK(results[0].cases == 121);
  CHECK(results[0].passed);

  opts.suite = "no-such-suite";
  CHECK_THROWS_AS(run_verify(opts), Error);
}

TEST_CASE("a sign error in the spin flip fails only the oracle suite") {
  VerifyOptions opts;
  opts.flip = ComplexMatrix(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0});
  for (const SuiteResult& r : run_verify(opts)) {
    CAPTURE(r.name);
    CHECK(r.passed == (r.name != "oracle"));
  }
}
