#pragma once

#include <vector>

#include "fringelab/statespace.hpp"

// Small dense kernels behind statespace and entanglement. Sizes here are
// at most a handful of rows, so everything is plain Jacobi.
namespace fringelab::linalg {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Closed form for 2x2, cyclic complex Jacobi otherwise. The input is
/// assumed Hermitian; only its upper triangle is trusted.
HermitianEigen eigen_hermitian(const ComplexMatrix& m);

/// Descending singular values by one-sided (Hestenes) Jacobi. Small values
/// carry absolute error ~ eps * ||m||, with no squaring of the spectrum.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Unit column orthogonal to the unit 2-vector (u0, u1).
ComplexMatrix orthogonal_complement2(Complex u0, Complex u1);

}  // namespace fringelab::linalg
