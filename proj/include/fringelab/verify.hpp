#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fringelab/statespace.hpp"

namespace fringelab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
  double threshold = 0.0;
  int cases = 0;
};

struct VerifyOptions {
  std::optional<std::string> suite;  // run only this suite
  // Spin-flip matrix handed to the concurrence oracle. Tests swap in a
  // broken one to check that the oracle suite notices.
  ComplexMatrix flip = pauli_y();
};

/// unitarity, marginals, eq17, purity, oracle.
const std::vector<std::string>& suite_names();

/// Throws InvalidParameter for an unknown suite name.
std::vector<SuiteResult> run_verify(const VerifyOptions& opts);

}  // namespace fringelab
