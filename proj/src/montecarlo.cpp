#include "fringelab/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <utility>

#include "fringelab/entanglement.hpp"
#include "fringelab/error.hpp"
#include "fringelab/linalg.hpp"
#include "fringelab/tolerances.hpp"

namespace fringelab {

namespace {

constexpr double kPi = std::numbers::pi;

struct FnvHash {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  void add(double d) { add(std::bit_cast<std::uint64_t>(d == 0.0 ? 0.0 : d)); }
};

void hash_settings(FnvHash& f, const TransducerSettings& s) {
  f.add(s.mu);
  f.add(s.phi_a);
  f.add(s.phi_b);
  for (const Complex c : s.input_basis.entries()) {
    f.add(c.real());
    f.add(c.imag());
  }
}

// (content hash, occurrence) per setting; identical settings are told apart
// by how many copies came before.
std::vector<std::pair<std::uint64_t, std::uint32_t>> setting_keys(const ShotPlan& plan) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keys;
  keys.reserve(plan.settings.size());
  for (const SettingsPair& sp : plan.settings) {
    FnvHash f;
    hash_settings(f, sp.first);
    hash_settings(f, sp.second);
    const auto occurrence = static_cast<std::uint32_t>(
        std::count_if(keys.begin(), keys.end(), [&](const auto& k) { return k.first == f.h; }));
    keys.emplace_back(f.h, occurrence);
  }
  return keys;
}

std::vector<std::size_t> canonical_order(const ShotPlan& plan) {
  const auto keys = setting_keys(plan);
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  return order;
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const SettingsPair& sp,
                                            const DetectorModel& det) {
  auto p = detection_probabilities(rho, sp.first, sp.second).joints();
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  for (double& v : p) v = (1.0 - det.background) * v / total + det.background / 4.0;
  return p;
}

// Bloch vector of the arm-1 ket whose projection gives P(U1).
std::array<double, 3> measured_direction(const TransducerSettings& s) {
  const ComplexMatrix t = transducer_unitary(s);
  const Complex e0 = std::conj(t(0, 0));
  const Complex e1 = std::conj(t(0, 1));
  const Complex c = std::conj(e0) * e1;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(e0) - std::norm(e1)};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 pseudo_inverse(const Mat3& a) {
  ComplexMatrix m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = a[i][j];
  const auto eig = linalg::eigen_hermitian(m);
  const double cutoff = 1e-12 * std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  Mat3 out{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(std::abs(eig.values[k]) > cutoff)) continue;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        out[i][j] += (eig.vectors(i, k) * std::conj(eig.vectors(j, k))).real() / eig.values[k];
  }
  return out;
}

// Frequencies per setting: joint[k] = U1U2 share, marginal[k] = U1 share.
ObservableEstimates estimate_from_frequencies(const std::vector<std::array<double, 4>>& freq,
                                              const ShotPlan& plan) {
  const auto n = static_cast<double>(plan.shots_per_setting);
  const auto order = canonical_order(plan);

  Mat3 normal{};
  Mat3 meat{};
  std::array<double, 3> rhs{};
  double best_joint = -1.0;
  for (const std::size_t k : order) {
    const double f = freq[k][0] + freq[k][1];
    const double y = 2.0 * f - 1.0;
    const double var = 4.0 * std::clamp(f * (1.0 - f), 0.0, 0.25) / n;
    const auto d = measured_direction(plan.settings[k].first);
    for (std::size_t i = 0; i < 3; ++i) {
      rhs[i] += d[i] * y;
      for (std::size_t j = 0; j < 3; ++j) {
        normal[i][j] += d[i] * d[j];
        meat[i][j] += var * d[i] * d[j];
      }
    }
    best_joint = std::max(best_joint, freq[k][0]);
  }

  const Mat3 pinv = pseudo_inverse(normal);
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += pinv[i][j] * rhs[j];
  Mat3 cov{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) cov[i][j] += pinv[i][k] * meat[k][l] * pinv[l][j];

  const double norm_r = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  double var_v = 0.0;
  if (norm_r > 0.0) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) var_v += r[i] * cov[i][j] * r[j];
    var_v /= norm_r * norm_r;
  } else {
    var_v = cov[0][0] + cov[1][1] + cov[2][2];
  }

  ObservableEstimates out;
  out.v1.value = norm_r;
  out.v1.std_error = std::sqrt(std::max(var_v, 0.0));
  out.v1.n_effective = plan.shots_per_setting * static_cast<std::int64_t>(plan.settings.size());
  out.p12.value = best_joint;
  out.p12.std_error = std::sqrt(std::clamp(best_joint * (1.0 - best_joint), 0.0, 0.25) / n);
  out.p12.n_effective = plan.shots_per_setting;
  return out;
}

}  // namespace

void validate(const ShotPlan& plan) {
  if (plan.settings.empty()) throw Error(ErrorCode::InvalidPlan, "shot plan has no settings");
  if (plan.shots_per_setting < 1) throw Error(ErrorCode::InvalidPlan, "shots_per_setting must be at least 1");
  if (!(plan.detector.background >= 0.0 && plan.detector.background <= 1.0)) {
    throw Error(ErrorCode::InvalidPlan, "detector background must lie in [0, 1]");
  }
}

ShotPlan default_plan(const ComplexMatrix& basis_a, const ComplexMatrix& basis_b, std::int64_t shots,
                      std::uint64_t seed) {
  ShotPlan plan;
  plan.shots_per_setting = shots;
  plan.seed = seed;
  const TransducerSettings second{kPi, 0.0, 0.0, basis_b};
  plan.settings.push_back({{0.0, 0.0, 0.0, basis_a}, second});
  for (int k = 1; k < 16; ++k) {
    for (int j = 0; j < 4; ++j) {
      plan.settings.push_back({{k * kPi / 16.0, j * kPi / 2.0, 0.0, basis_a}, second});
    }
  }
  plan.settings.push_back({{kPi, 0.0, 0.0, basis_a}, second});
  validate(plan);
  return plan;
}

std::vector<std::uint64_t> substream_seeds(const ShotPlan& plan) {
  std::vector<std::uint64_t> seeds;
  for (const auto& [hash, occurrence] : setting_keys(plan)) {
    std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                      static_cast<std::uint32_t>(hash), static_cast<std::uint32_t>(hash >> 32), occurrence};
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    seeds.push_back((static_cast<std::uint64_t>(words[1]) << 32) | words[0]);
  }
  return seeds;
}

std::vector<CountRecord> sample_counts(const DensityMatrix& rho, const ShotPlan& plan) {
  validate(plan);
  const auto seeds = substream_seeds(plan);
  std::vector<CountRecord> records;
  records.reserve(plan.settings.size());
  for (std::size_t k = 0; k < plan.settings.size(); ++k) {
    const auto p = outcome_probabilities(rho, plan.settings[k], plan.detector);
    std::mt19937_64 rng(seeds[k]);
    CountRecord rec;
    std::int64_t remaining = plan.shots_per_setting;
    double mass = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> draw(remaining, q);
      rec.counts[i] = draw(rng);
      remaining -= rec.counts[i];
      mass -= p[i];
    }
    rec.counts[3] = remaining;
    records.push_back(rec);
  }
  return records;
}

ObservableEstimates estimate_observables_from_counts(const std::vector<CountRecord>& records,
                                                     const ShotPlan& plan) {
  validate(plan);
  if (records.size() != plan.settings.size()) {
    throw Error(ErrorCode::InvalidPlan, "record count does not match the plan");
  }
  std::vector<std::array<double, 4>> freq;
  freq.reserve(records.size());
  const auto n = static_cast<double>(plan.shots_per_setting);
  for (const CountRecord& rec : records) {
    if (rec.total() != plan.shots_per_setting) {
      throw Error(ErrorCode::InvalidPlan, "record counts do not sum to shots_per_setting");
    }
    freq.push_back({rec.counts[0] / n, rec.counts[1] / n, rec.counts[2] / n, rec.counts[3] / n});
  }
  return estimate_from_frequencies(freq, plan);
}

ObservableEstimates estimate_observables_from_probabilities(const DensityMatrix& rho, const ShotPlan& plan) {
  validate(plan);
  std::vector<std::array<double, 4>> freq;
  freq.reserve(plan.settings.size());
  for (const SettingsPair& sp : plan.settings) freq.push_back(outcome_probabilities(rho, sp, plan.detector));
  return estimate_from_frequencies(freq, plan);
}

ConcurrenceWithError estimate_concurrence_with_error(const EstimateWithError& v1, const EstimateWithError& p12,
                                                     std::uint64_t seed, int resamples) {
  if (resamples < 2) throw Error(ErrorCode::InvalidParameter, "bootstrap needs at least two resamples");
  ConcurrenceWithError out;
  if (v1.std_error == 0.0 && p12.std_error == 0.0) {
    const double c = signed_concurrence(v1.value, p12.value);
    out.c = {std::max(c, 0.0), 0.0, 1};
    out.feasibility_rate = 4.0 * p12.value - 3.0 * v1.value - 1.0 >= 0.0 ? 1.0 : 0.0;
    out.clamp_rate = c < 0.0 ? 1.0 : 0.0;
    return out;
  }

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xb0075u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  double sum = 0.0;
  double sum_sq = 0.0;
  int feasible = 0;
  int clamped = 0;
  for (int i = 0; i < resamples; ++i) {
    const double v = v1.value + v1.std_error * gauss(rng);
    const double p = p12.value + p12.std_error * gauss(rng);
    if (4.0 * p - 3.0 * v - 1.0 >= 0.0) ++feasible;
    const double signed_c = signed_concurrence(v, p);
    if (signed_c < 0.0) ++clamped;
    const double c = std::max(signed_c, 0.0);
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / resamples;
  const double var = (sum_sq - resamples * mean * mean) / (resamples - 1);
  out.c = {mean, std::sqrt(std::max(var, 0.0)), resamples};
  out.feasibility_rate = static_cast<double>(feasible) / resamples;
  out.clamp_rate = static_cast<double>(clamped) / resamples;
  return out;
}

}  // namespace fringelab
