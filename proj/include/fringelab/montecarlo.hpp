#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fringelab/interferometer.hpp"

namespace fringelab {

/// Background counts: each detected pair lands in a uniformly random joint
/// outcome with this probability. Zero means ideal detectors.
struct DetectorModel {
  double background = 0.0;
};

struct ShotPlan {
  std::int64_t shots_per_setting = 0;
  std::vector<SettingsPair> settings;
  std::uint64_t seed = 0;
  DetectorModel detector;
};

/// Joint outcome counts, ordered U1U2, U1L2, L1U2, L1L2.
struct CountRecord {
  std::array<std::int64_t, 4> counts{};

  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_effective = 0;
};

struct ObservableEstimates {
  EstimateWithError v1;
  EstimateWithError p12;
};

struct ConcurrenceWithError {
  EstimateWithError c;
  double feasibility_rate = 0.0;  // resamples with 4 P12 - 3 V1 - 1 >= 0
  double clamp_rate = 0.0;        // resamples whose signed value was negative
};

/// Throws InvalidPlan on an empty scan, shots < 1 or a background outside [0, 1].
void validate(const ShotPlan& plan);

/// Scan used by the estimate pipeline. Arm 2 sits at mu = pi in basis_b.
/// Arm 1 runs over mu = k pi/16 (k = 0..16) in basis_a, with phi_a in
/// {0, pi/2, pi, 3 pi/2} for the interior angles. The first entry is the
/// analytic joint argmax.
ShotPlan default_plan(const ComplexMatrix& basis_a, const ComplexMatrix& basis_b, std::int64_t shots,
                      std::uint64_t seed);

/// Seed of one setting's substream. It depends on the plan seed, the
/// setting's values and how many identical settings precede it, not on its
/// position in the list.
std::vector<std::uint64_t> substream_seeds(const ShotPlan& plan);

/// Multinomial draws of the joint outcomes, one record per setting.
std::vector<CountRecord> sample_counts(const DensityMatrix& rho, const ShotPlan& plan);

/// V1 from a least-squares fit of the arm-1 Bloch vector to every scanned
/// marginal, P12 as the largest joint U1U2 frequency. Standard errors are
/// binomial, with the delta method for |r|.
ObservableEstimates estimate_observables_from_counts(const std::vector<CountRecord>& records,
                                                     const ShotPlan& plan);

/// Same estimators fed with the exact probabilities of each setting.
ObservableEstimates estimate_observables_from_probabilities(const DensityMatrix& rho, const ShotPlan& plan);

/// Parametric bootstrap of the Werner-class inversion: Gaussian (V1, P12)
/// resamples pushed through the clamped formula; value and std_error are
/// their mean and standard deviation. Zero input errors return the
/// plug-in value with zero spread.
ConcurrenceWithError estimate_concurrence_with_error(const EstimateWithError& v1, const EstimateWithError& p12,
                                                     std::uint64_t seed, int resamples = 4096);

}  // namespace fringelab
