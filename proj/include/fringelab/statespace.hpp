#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fringelab {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. std::complex<double> is stored as
/// interleaved (re, im), so entries() can be handed to C callers directly.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Throws InvalidDimension on a size mismatch and NonFinite on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest elementwise |a_ij - b_ij|; InvalidDimension if shapes differ.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |m_ij - conj(m_ji)|.
double hermitian_defect(const ComplexMatrix& m);
/// max |(U^dagger U - I)_ij|.
double unitarity_defect(const ComplexMatrix& u);
Complex determinant2(const ComplexMatrix& m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ascending eigenvalues of a 2x2 or 4x4 Hermitian matrix.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m);

class PureState {
 public:
  // Throws NotNormalized unless sum |amp|^2 = 1 within tol::normalization.
  explicit PureState(std::vector<Complex> amplitudes);
  // Rescales to unit norm; throws InvalidParameter for the zero vector.
  static PureState normalized(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amps_;
};

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Hermitian, unit-trace, positive-semidefinite 2x2 or 4x4 matrix.
/// Construction validates; instances are immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

enum class Arm { first, second };

DensityMatrix partial_trace(const DensityMatrix& rho, Arm keep);
double purity(const DensityMatrix& rho);

/// psi = alpha |0'>|1'> + beta |1'>|0'> where |k'> of arm A is column k of
/// basis_a (likewise for B). alpha >= beta >= 0 are real.
struct SchmidtForm {
  Complex alpha;
  Complex beta;
  ComplexMatrix basis_a;
  ComplexMatrix basis_b;

  PureState reconstruct() const;
};

SchmidtForm schmidt_decompose(const PureState& psi);

}  // namespace fringelab
