#include "fringelab/families.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fringelab/error.hpp"

namespace fringelab {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << name << " = " << v << " is outside [0, 1]";
    throw Error(ErrorCode::InvalidParameter, os.str());
  }
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

}  // namespace

PureState singlet() {
  const double h = 1.0 / std::sqrt(2.0);
  return PureState({0.0, h, -h, 0.0});
}

PureState schmidt_aligned(double alpha2) {
  require_unit_interval(alpha2, "alpha2");
  return PureState({0.0, std::sqrt(alpha2), std::sqrt(1.0 - alpha2), 0.0});
}

WernerParams werner_params(double p, PureState psi) {
  require_unit_interval(p, "p");
  if (psi.dim() != 4) throw Error(ErrorCode::InvalidDimension, "Werner pure part must be a two-qubit state");
  return WernerParams{p, std::move(psi)};
}

DensityMatrix werner_state(const WernerParams& params) {
  require_unit_interval(params.p, "p");
  ComplexMatrix m = params.p * params.psi.projector();
  const double noise = (1.0 - params.p) / 4.0;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += noise;
  return DensityMatrix(std::move(m));
}

WernerCanonical werner_canonical(const WernerParams& params) {
  require_unit_interval(params.p, "p");
  const SchmidtForm sf = schmidt_decompose(params.psi);
  const double p = params.p;
  const double a = sf.alpha.real();
  const double b = sf.beta.real();
  WernerCanonical c;
  c.alpha = a;
  c.beta = b;
  c.w = (1.0 - p) / 4.0;
  c.x = c.w + p * a * a;
  c.y = c.w + p * b * b;
  c.z = p * sf.alpha * std::conj(sf.beta);
  return c;
}

DensityMatrix gisin_state(const GisinParams& params) {
  require_unit_interval(params.a, "a");
  require_unit_interval(params.x, "x");
  const double x = params.x;
  const double sa = std::sqrt(params.a);
  const double sb = std::sqrt(1.0 - params.a);
  ComplexMatrix m(4, 4);
  m(0, 0) = (1.0 - x) / 2.0;
  m(3, 3) = (1.0 - x) / 2.0;
  m(1, 1) = x * params.a;
  m(2, 2) = x * (1.0 - params.a);
  m(1, 2) = x * sa * sb;
  m(2, 1) = x * sa * sb;
  return DensityMatrix(std::move(m));
}

PureState random_haar_pure(std::uint64_t seed) {
  auto rng = seeded_engine(seed, 0x5eed);
  std::normal_distribution<double> gauss;
  std::vector<Complex> amps(4);
  for (Complex& c : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = Complex(re, im);
  }
  return PureState::normalized(std::move(amps));
}

ComplexMatrix random_unitary2(std::uint64_t seed) {
  auto rng = seeded_engine(seed, 0x2u);
  std::normal_distribution<double> gauss;
  Complex g[4];
  for (Complex& c : g) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = Complex(re, im);
  }
  // Gram-Schmidt on the columns; the R-diagonal phases are already positive.
  const double n0 = std::hypot(std::abs(g[0]), std::abs(g[2]));
  const Complex q00 = g[0] / n0, q10 = g[2] / n0;
  const Complex proj = std::conj(q00) * g[1] + std::conj(q10) * g[3];
  Complex q01 = g[1] - proj * q00, q11 = g[3] - proj * q10;
  const double n1 = std::hypot(std::abs(q01), std::abs(q11));
  q01 /= n1;
  q11 /= n1;
  return ComplexMatrix(2, 2, {q00, q01, q10, q11});
}

}  // namespace fringelab
