#include "fringelab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fringelab/error.hpp"

namespace fringelab {

namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

double grid_value(const Axis& axis, int k, int g) {
  if (axis.kind == Axis::Kind::periodic) return axis.hi * k / g;
  return axis.lo + (axis.hi - axis.lo) * k / (g - 1);
}

double grid_spacing(const Axis& axis, int g) {
  return axis.kind == Axis::Kind::periodic ? axis.hi / g : (axis.hi - axis.lo) / (g - 1);
}

double place(const Axis& axis, double v) {
  if (axis.kind == Axis::Kind::periodic) {
    v = std::fmod(v, axis.hi);
    if (v < 0.0) v += axis.hi;
    return v;
  }
  return std::clamp(v, axis.lo, axis.hi);
}

struct Grid {
  std::vector<double> values;
  std::vector<int> shape;

  std::vector<int> unravel(std::size_t index) const {
    std::vector<int> k(shape.size());
    for (std::size_t d = shape.size(); d-- > 0;) {
      k[d] = static_cast<int>(index % shape[d]);
      index /= shape[d];
    }
    return k;
  }

  std::size_t ravel(const std::vector<int>& k) const {
    std::size_t index = 0;
    for (std::size_t d = 0; d < shape.size(); ++d) index = index * shape[d] + k[d];
    return index;
  }
};

Grid evaluate_grid(const Objective& f, std::span<const Axis> axes, int g) {
  Grid grid;
  grid.shape.assign(axes.size(), g);
  std::size_t total = 1;
  for (std::size_t d = 0; d < axes.size(); ++d) {
    total *= static_cast<std::size_t>(g);
    if (total > kMaxGridPoints) throw Error(ErrorCode::InvalidParameter, "search grid is too large");
  }
  grid.values.resize(total);
  std::vector<double> x(axes.size());
  for (std::size_t i = 0; i < total; ++i) {
    const auto k = grid.unravel(i);
    for (std::size_t d = 0; d < axes.size(); ++d) x[d] = grid_value(axes[d], k[d], g);
    grid.values[i] = f(x);
  }
  return grid;
}

double tie_slack(double v) { return 1e-14 * (1.0 + std::abs(v)); }

bool is_local_max(const Grid& grid, std::span<const Axis> axes, std::size_t index) {
  const double v = grid.values[index];
  auto k = grid.unravel(index);
  for (std::size_t d = 0; d < axes.size(); ++d) {
    const int g = grid.shape[d];
    for (int step : {-1, 1}) {
      int n = k[d] + step;
      if (axes[d].kind == Axis::Kind::periodic) {
        n = (n + g) % g;
      } else if (n < 0 || n >= g) {
        continue;
      }
      const int saved = k[d];
      k[d] = n;
      const double nv = grid.values[grid.ravel(k)];
      k[d] = saved;
      if (nv > v + tie_slack(v)) return false;
    }
  }
  return true;
}

// Grid indices of local maxima, best value first; equal values keep
// lexicographic (index) order.
std::vector<std::size_t> ranked_starts(const Grid& grid, std::span<const Axis> axes, int count) {
  std::vector<std::size_t> order(grid.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid.values[a] > grid.values[b]; });
  std::vector<std::size_t> out;
  // The first start is the lexicographically smallest point tied with the
  // grid maximum.
  const double top = grid.values[order.front()];
  for (std::size_t idx = 0; idx < grid.values.size(); ++idx) {
    if (grid.values[idx] >= top - tie_slack(top)) {
      out.push_back(idx);
      break;
    }
  }
  for (std::size_t idx : order) {
    if (idx == out.front()) continue;
    if (static_cast<int>(out.size()) >= count) break;
    if (is_local_max(grid, axes, idx)) out.push_back(idx);
  }
  return out;
}

OptimumPoint refine(const Objective& f, std::span<const Axis> axes, const OptimizerConfig& cfg,
                    const SearchOptions& opts, std::vector<double> x, double value) {
  const std::size_t dims = axes.size();
  std::vector<double> step(dims);
  for (std::size_t d = 0; d < dims; ++d) step[d] = 0.5 * grid_spacing(axes[d], cfg.grid_points_per_angle);

  // Poll directions as sparse (axis, sign) lists.
  std::vector<std::vector<std::pair<std::size_t, int>>> directions;
  for (std::size_t d = 0; d < dims; ++d)
    for (int s : {1, -1}) directions.push_back({{d, s}});
  if (opts.diagonal_polls) {
    for (std::size_t i = 0; i < dims; ++i)
      for (std::size_t j = i + 1; j < dims; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) directions.push_back({{i, si}, {j, sj}});
  }

  const double max_step = *std::max_element(step.begin(), step.end());
  const auto min_step = [](const std::vector<double>& s) { return *std::min_element(s.begin(), s.end()); };

  int evaluations = 0;
  std::vector<double> trial(dims);
  while (*std::max_element(step.begin(), step.end()) >= cfg.tolerance) {
    bool improved = false;
    for (const auto& dir : directions) {
      trial = x;
      for (const auto& [d, s] : dir) trial[d] = place(axes[d], x[d] + s * step[d]);
      if (trial == x) continue;
      const double v = f(trial);
      if (++evaluations > cfg.refine_iterations) {
        std::ostringstream os;
        os << "refinement exceeded " << cfg.refine_iterations << " evaluations (best " << value << ")";
        throw OptimizerStalled(value, os.str());
      }
      if (!(v > value + tie_slack(value))) continue;
      value = v;
      x = trial;
      improved = true;
      // Keep going with doubled strides while the direction pays off, so
      // shallow ridges are not walked at the current step size.
      for (double stride = 2.0; stride * min_step(step) <= max_step; stride *= 2.0) {
        trial = x;
        for (const auto& [d, s] : dir) trial[d] = place(axes[d], x[d] + s * stride * step[d]);
        if (trial == x) break;
        const double w = f(trial);
        if (++evaluations > cfg.refine_iterations) {
          std::ostringstream os;
          os << "refinement exceeded " << cfg.refine_iterations << " evaluations (best " << value << ")";
          throw OptimizerStalled(value, os.str());
        }
        if (!(w > value + tie_slack(value))) break;
        value = w;
        x = trial;
      }
    }
    if (!improved) {
      for (double& s : step) s *= 0.5;
    }
  }
  return {std::move(x), value};
}

std::vector<double> grid_point(const Grid& grid, std::span<const Axis> axes, std::size_t index, int g) {
  const auto k = grid.unravel(index);
  std::vector<double> x(axes.size());
  for (std::size_t d = 0; d < axes.size(); ++d) x[d] = grid_value(axes[d], k[d], g);
  return x;
}

}  // namespace

void validate(const OptimizerConfig& cfg) {
  if (cfg.grid_points_per_angle < 8) {
    throw Error(ErrorCode::InvalidParameter, "grid_points_per_angle must be at least 8");
  }
  if (cfg.refine_iterations < 1) throw Error(ErrorCode::InvalidParameter, "refine_iterations must be positive");
  if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be positive");
}

namespace {

// Refined optimum from each grid start, in start order.
std::vector<OptimumPoint> refine_starts(const Objective& f, std::span<const Axis> axes,
                                        const OptimizerConfig& cfg, int max_starts,
                                        const SearchOptions& opts) {
  validate(cfg);
  if (axes.empty()) throw Error(ErrorCode::InvalidDimension, "no search axes");
  const int g = cfg.grid_points_per_angle;
  const Grid grid = evaluate_grid(f, axes, g);
  std::vector<OptimumPoint> out;
  for (std::size_t idx : ranked_starts(grid, axes, max_starts)) {
    out.push_back(refine(f, axes, cfg, opts, grid_point(grid, axes, idx, g), grid.values[idx]));
  }
  return out;
}

}  // namespace

std::vector<OptimumPoint> local_maxima(const Objective& f, std::span<const Axis> axes,
                                       const OptimizerConfig& cfg, int max_starts,
                                       const SearchOptions& opts) {
  auto out = refine_starts(f, axes, cfg, max_starts, opts);
  std::stable_sort(out.begin(), out.end(),
                   [](const OptimumPoint& a, const OptimumPoint& b) { return a.value > b.value; });
  return out;
}

OptimumPoint maximize(const Objective& f, std::span<const Axis> axes, const OptimizerConfig& cfg,
                      const SearchOptions& opts) {
  auto all = refine_starts(f, axes, cfg, std::max(1, opts.starts), opts);
  double best = all.front().value;
  for (const auto& p : all) best = std::max(best, p.value);
  // Values within rounding of the best are ties; the earliest start wins.
  for (auto& p : all) {
    if (p.value >= best - tie_slack(best)) return std::move(p);
  }
  return std::move(all.front());
}

}  // namespace fringelab
