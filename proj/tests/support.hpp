#pragma once

#include <random>

#include "fringelab/statespace.hpp"
#include "oracles.hpp"

namespace support {

inline oracle::Mat to_oracle(const fringelab::ComplexMatrix& m) {
  oracle::Mat out = oracle::zeros(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline fringelab::ComplexMatrix from_oracle(const oracle::Mat& m) {
  fringelab::ComplexMatrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

inline fringelab::DensityMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  return fringelab::DensityMatrix(from_oracle(oracle::random_density(rng, n)));
}

}  // namespace support
