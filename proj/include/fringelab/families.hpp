#pragma once

#include <cstdint>

#include "fringelab/statespace.hpp"

namespace fringelab {

/// rho = p |psi><psi| + (1 - p) I/4.
struct WernerParams {
  double p = 0.0;
  PureState psi = PureState({0.0, 1.0, 0.0, 0.0});
};

/// Entries of a Werner-class state in the Schmidt basis of its pure part:
///   diag(w, x, y, w) with coherence z between |0'1'> and |1'0'>.
struct WernerCanonical {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  Complex z = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

/// x |psi_a><psi_a| + (1 - x)/2 (|00><00| + |11><11|),
/// psi_a = sqrt(a)|01> + sqrt(1 - a)|10>.
struct GisinParams {
  double a = 0.5;
  double x = 1.0;
};

/// (|01> - |10>)/sqrt(2).
PureState singlet();
/// sqrt(alpha2)|01> + sqrt(1 - alpha2)|10>; Schmidt basis is computational.
PureState schmidt_aligned(double alpha2);

WernerParams werner_params(double p, PureState psi);

DensityMatrix werner_state(const WernerParams& params);
WernerCanonical werner_canonical(const WernerParams& params);
DensityMatrix gisin_state(const GisinParams& params);

/// Four complex normals, normalized. Same seed, same state.
PureState random_haar_pure(std::uint64_t seed);

/// Haar-random 2x2 unitary (QR of a complex Ginibre matrix).
ComplexMatrix random_unitary2(std::uint64_t seed);

}  // namespace fringelab
