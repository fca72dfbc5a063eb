#include "fringelab/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fringelab/error.hpp"
#include "fringelab/linalg.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << op << ": shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
       << b.cols();
    throw Error(ErrorCode::InvalidDimension, os.str());
  }
}

// Multiplies v by a unit phase so its first non-negligible component is
// real and positive.
void fix_phase(std::span<Complex> v) {
  for (const Complex c : v) {
    if (std::abs(c) > 1e-12) {
      const Complex phase = std::conj(c) / std::abs(c);
      for (Complex& x : v) x *= phase;
      return;
    }
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
    throw Error(ErrorCode::InvalidDimension, "matrix entries do not match its shape");
  }
  for (const Complex c : data_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::NonFinite, "matrix has a non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (Complex& c : out.data_) c = std::conj(c);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex c : data_) s += std::norm(c);
  return std::sqrt(s);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::InvalidDimension, "matrix product: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix sum");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "matrix difference");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (Complex& c : out.data_) c *= s;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double hermitian_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::InvalidDimension, "hermitian check needs a square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols()));
}

Complex determinant2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error(ErrorCode::InvalidDimension, "determinant2 needs 2x2");
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix pauli_y() {
  return ComplexMatrix(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
}

ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m) {
  if (!m.is_square() || (m.rows() != 2 && m.rows() != 4)) {
    throw Error(ErrorCode::InvalidDimension, "eigenvalues_hermitian supports 2x2 and 4x4 only");
  }
  const double defect = hermitian_defect(m);
  if (defect > tol::hermitian) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  return linalg::eigen_hermitian(m).values;
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() != 2 && amps_.size() != 4) {
    throw Error(ErrorCode::InvalidDimension, "pure state must have 2 or 4 amplitudes");
  }
  double norm2 = 0.0;
  for (const Complex c : amps_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::NonFinite, "pure state has a non-finite amplitude");
    }
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > tol::normalization) {
    std::ostringstream os;
    os << "pure state norm^2 is " << norm2;
    throw Error(ErrorCode::NotNormalized, os.str());
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  double norm2 = 0.0;
  for (const Complex c : amplitudes) norm2 += std::norm(c);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw Error(ErrorCode::InvalidParameter, "cannot normalize a zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (Complex& c : amplitudes) c *= inv;
  return PureState(std::move(amplitudes));
}

ComplexMatrix PureState::projector() const {
  const auto n = amps_.size();
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = amps_[i] * std::conj(amps_[j]);
  return p;
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidDimension, "fidelity: dimension mismatch");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square() || (m_.rows() != 2 && m_.rows() != 4)) {
    throw Error(ErrorCode::InvalidDimension, "density matrix must be 2x2 or 4x4");
  }
  const double defect = hermitian_defect(m_);
  if (defect > tol::hermitian) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (defect " << defect << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << "+" << tr.imag() << "i";
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  const double lowest = linalg::eigen_hermitian(m_).values.front();
  if (lowest < -tol::psd_slack) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lowest;
    throw Error(ErrorCode::NotPositive, os.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix((1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Arm keep) {
  if (rho.dim() != 4) throw Error(ErrorCode::InvalidDimension, "partial_trace needs a two-qubit state");
  ComplexMatrix out(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        // index = 2 * (arm-1 index) + (arm-2 index)
        out(i, j) += keep == Arm::first ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
  // Restore exact Hermiticity lost to summation order.
  out(1, 0) = std::conj(out(0, 1));
  out(0, 0) = out(0, 0).real();
  out(1, 1) = out(1, 1).real();
  return DensityMatrix(std::move(out));
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const Complex c : rho.matrix().entries()) s += std::norm(c);
  return s;
}

PureState SchmidtForm::reconstruct() const {
  const ComplexMatrix core(4, 1, {0.0, alpha, beta, 0.0});
  const ComplexMatrix v = kron(basis_a, basis_b) * core;
  return PureState::normalized(std::vector<Complex>(v.entries().begin(), v.entries().end()));
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  if (psi.dim() != 4) throw Error(ErrorCode::InvalidDimension, "schmidt_decompose needs a two-qubit state");
  // Coefficient matrix M_ij = <ij|psi>; psi = sum_k s_k u_k (x) w_k with
  // u_k the left singular vectors and w_k = M^T conj(u_k) / s_k.
  const ComplexMatrix m(2, 2, {psi[0], psi[1], psi[2], psi[3]});
  const auto eig = linalg::eigen_hermitian(m * m.adjoint());

  std::vector<Complex> u1{eig.vectors(0, 1), eig.vectors(1, 1)};
  fix_phase(u1);
  const ComplexMatrix u2m = linalg::orthogonal_complement2(u1[0], u1[1]);
  std::vector<Complex> u2{u2m(0, 0), u2m(1, 0)};

  auto project = [&](const std::vector<Complex>& u) {
    std::vector<Complex> w(2);
    for (std::size_t j = 0; j < 2; ++j) w[j] = std::conj(u[0]) * m(0, j) + std::conj(u[1]) * m(1, j);
    return w;
  };

  std::vector<Complex> w1 = project(u1);
  double s1 = std::hypot(std::abs(w1[0]), std::abs(w1[1]));
  if (s1 > 0.0) {
    for (Complex& c : w1) c /= s1;
  } else {
    w1 = {1.0, 0.0};  // unreachable for a normalized state
  }

  // w2 is taken as the exact complement of w1, rephased to follow the raw
  // projection; this keeps basis_b unitary when s2 is tiny.
  const ComplexMatrix w2m = linalg::orthogonal_complement2(w1[0], w1[1]);
  std::vector<Complex> w2{w2m(0, 0), w2m(1, 0)};
  const std::vector<Complex> w2_raw = project(u2);
  const Complex overlap = std::conj(w2[0]) * w2_raw[0] + std::conj(w2[1]) * w2_raw[1];
  double s2 = std::abs(overlap);
  if (s2 > 0.0) {
    const Complex phase = overlap / s2;
    for (Complex& c : w2) c *= phase;
  }

  s2 = std::min(s2, s1);
  const double norm = std::hypot(s1, s2);
  s1 /= norm;
  s2 /= norm;

  SchmidtForm out;
  out.alpha = s1;
  out.beta = s2;
  out.basis_a = ComplexMatrix(2, 2, {u1[0], u2[0], u1[1], u2[1]});
  // |0'>_B pairs with beta, |1'>_B with alpha.
  out.basis_b = ComplexMatrix(2, 2, {w2[0], w1[0], w2[1], w1[1]});
  return out;
}

}  // namespace fringelab
