#pragma once

// Numerical slack shared by the library and its tests.
namespace fringelab::tol {

inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd_slack = 1e-10;
inline constexpr double normalization = 1e-12;
inline constexpr double unitary = 1e-12;
inline constexpr double schmidt = 1e-10;
inline constexpr double probability = 1e-12;
inline constexpr double probability_sum = 1e-10;

// Jacobi sweeps stop once the off-diagonal norm falls below this (relative).
inline constexpr double jacobi_threshold = 1e-14;
inline constexpr int jacobi_max_sweeps = 100;

// Eigenvalues of a density matrix below this (times its trace) are treated
// as exact zeros when forming square roots.
inline constexpr double rank_cutoff = 1e-15;

// Estimator domain slack around Werner-class observables.
inline constexpr double p_range = 1e-8;
inline constexpr double feasibility_violation = 1e-6;
inline constexpr double sqrt_truncation = 1e-9;

}  // namespace fringelab::tol
