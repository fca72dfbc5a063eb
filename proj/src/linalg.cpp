#include "fringelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fringelab/error.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab::linalg {

namespace {

// Unitary J acting on coordinates (p, q) that diagonalizes the Hermitian
// block [[app, apq], [conj(apq), aqq]] via J^dagger A J. Returns false when
// apq is already zero.
struct Rotation {
  Complex jpp, jpq, jqp, jqq;
};

bool jacobi_rotation(double app, double aqq, Complex apq, Rotation& rot) {
  const double r = std::abs(apq);
  if (r == 0.0) return false;
  const Complex phase = apq / r;  // e^{i theta}
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  rot = {c, s, -s * std::conj(phase), c * std::conj(phase)};
  return true;
}

void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = mp * j.jpp + mq * j.jqp;
    m(k, q) = mp * j.jpq + mq * j.jqq;
  }
}

void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = std::conj(j.jpp) * mp + std::conj(j.jqp) * mq;
    m(q, k) = std::conj(j.jpq) * mp + std::conj(j.jqq) * mq;
  }
}

HermitianEigen sorted(std::vector<double> values, const ComplexMatrix& vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  HermitianEigen out{std::vector<double>(values.size()), ComplexMatrix(vectors.rows(), vectors.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[k] = values[order[k]];
    for (std::size_t r = 0; r < vectors.rows(); ++r) out.vectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

HermitianEigen eigen2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  HermitianEigen out{{mean - radius, mean + radius}, ComplexMatrix(2, 2)};
  if (std::abs(b) == 0.0) {
    // Already diagonal: order the basis vectors by their entries.
    const bool swap = a > d;
    out.vectors(swap ? 1 : 0, 0) = 1.0;
    out.vectors(swap ? 0 : 1, 1) = 1.0;
    out.values = {std::min(a, d), std::max(a, d)};
    return out;
  }
  // Upper eigenvector from whichever of the two null-space rows is larger.
  const double upper = out.values[1];
  Complex v0, v1;
  if (std::abs(upper - d) >= std::abs(upper - a)) {
    v0 = upper - d;
    v1 = std::conj(b);
  } else {
    v0 = b;
    v1 = upper - a;
  }
  const double n = std::hypot(std::abs(v0), std::abs(v1));
  v0 /= n;
  v1 /= n;
  out.vectors(0, 1) = v0;
  out.vectors(1, 1) = v1;
  out.vectors(0, 0) = -std::conj(v1);
  out.vectors(1, 0) = std::conj(v0);
  return out;
}

}  // namespace

HermitianEigen eigen_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::InvalidDimension, "eigen_hermitian needs a square matrix");
  if (m.rows() == 2) return eigen2(m);

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  // Symmetrize from the upper triangle.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) a(j, i) = std::conj(a(i, j));
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < tol::jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (std::sqrt(off) <= tol::jacobi_threshold * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        Rotation rot;
        if (!jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q), rot)) continue;
        rotate_columns(a, p, q, rot);
        rotate_rows(a, p, q, rot);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, rot);
      }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return sorted(std::move(values), v);
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  ComplexMatrix a = m;
  const std::size_t n = a.cols();
  constexpr double eps = 1e-15;

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < a.rows(); ++k) {
          alpha += std::norm(a(k, p));
          beta += std::norm(a(k, q));
          gamma += std::conj(a(k, p)) * a(k, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        Rotation rot;
        if (!jacobi_rotation(alpha, beta, gamma, rot)) continue;
        rotate_columns(a, p, q, rot);
        rotated = true;
      }
    if (!rotated) break;
  }

  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.rows(); ++k) s += std::norm(a(k, j));
    out[j] = std::sqrt(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ComplexMatrix orthogonal_complement2(Complex u0, Complex u1) {
  Complex c0 = -std::conj(u1);
  Complex c1 = std::conj(u0);
  const Complex lead = std::abs(c0) > 1e-12 ? c0 : c1;
  const Complex phase = std::conj(lead) / std::abs(lead);
  return ComplexMatrix(2, 1, {c0 * phase, c1 * phase});
}

}  // namespace fringelab::linalg
