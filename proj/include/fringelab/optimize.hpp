#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fringelab {

struct OptimizerConfig {
  int grid_points_per_angle = 16;
  // Objective evaluations allowed per refinement start.
  int refine_iterations = 20000;
  // Refinement stops once every step size is below this. Objectives here
  // are probabilities with O(1) slopes, so the final objective change is
  // below it as well.
  double tolerance = 1e-8;
};

void validate(const OptimizerConfig& cfg);

struct Axis {
  enum class Kind { bounded, periodic };
  double lo = 0.0;
  double hi = 1.0;
  Kind kind = Kind::bounded;

  static Axis bounded(double lo, double hi) { return {lo, hi, Kind::bounded}; }
  static Axis periodic(double period) { return {0.0, period, Kind::periodic}; }
};

struct OptimumPoint {
  std::vector<double> x;
  double value = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

struct SearchOptions {
  // Number of grid local maxima refined; the best refined result wins.
  int starts = 4;
  // Also poll the +-e_i +-e_j directions (helps along ridges).
  bool diagonal_polls = false;
};

/// Deterministic grid + pattern-search maximizer. Bounded axes are sampled
/// with both endpoints, periodic axes on [0, period). Among grid points
/// with equal values the lexicographically smallest one is kept.
/// Throws OptimizerStalled when a refinement exceeds its budget.
OptimumPoint maximize(const Objective& f, std::span<const Axis> axes, const OptimizerConfig& cfg,
                      const SearchOptions& opts = {});

/// Grid local maxima of f, each refined, best first. Used where every
/// optimum matters, not only the global one.
std::vector<OptimumPoint> local_maxima(const Objective& f, std::span<const Axis> axes,
                                       const OptimizerConfig& cfg, int max_starts,
                                       const SearchOptions& opts = {});

}  // namespace fringelab
