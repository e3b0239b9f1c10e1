#pragma once

#include "hll/dimension.hpp"
#include "hll/holder.hpp"

namespace hll {

// Fits use only the scale suffix where a level's counts stay at or above
// this floor; a cover of fewer cells at the finest scale is still in its
// resolution turn-on regime and carries no slope information.
inline constexpr std::uint64_t kResolveFloor = 16;

// Per-level box-count data over a uniform r-grid spanning the sampled
// range of f on the mask. Slopes are box-dimension proxies for the
// level-set Hausdorff dimensions (they upper-bound them).
struct LevelProfile {
    std::vector<double> levels;                        // strictly increasing
    std::vector<int> scales;
    std::vector<std::vector<std::uint64_t>> counts;    // [level][scale]
    std::vector<DimEstimate> dims;                     // meaningful where resolved
    std::vector<std::uint8_t> empty;                   // level never attained
    std::vector<std::uint8_t> resolved;                // enough cells for a fit
    double range_measure = 0.0;                        // estimated lambda(f(F))
    double level_spacing = 0.0;

    std::size_t nonempty_count() const;
    std::size_t resolved_count() const;
};

// a_N(f, r): mask-occupied cells at resolution N whose corner values
// straddle r. holder_slack widens each cell's span by c*diam^alpha,
// giving a certified superset of the true level cover.
std::uint64_t level_cells(const GridFunction& f, const GridSet& mask, double r, int N,
                          bool holder_slack = false);

// Box dimension of one level from straddle counts across scales, fitted
// on the resolved suffix. is_empty: zero count at the finest scale.
// is_resolved: at least 3 scales with counts at or above kResolveFloor.
DimEstimate level_dim(const GridFunction& f, const GridSet& mask, double r,
                      const std::vector<int>& scales, bool* is_empty = nullptr,
                      bool* is_resolved = nullptr);

LevelProfile level_sweep(const GridFunction& f, const GridSet& mask, int level_count,
                         const std::vector<int>& scales, bool holder_slack = false);

// Essential-sup proxy: high quantile (default 1 - 1/level_count) of the
// resolved-level slopes. Profiles with no resolved level signal
// empty-range.
double dstar_estimate(const LevelProfile& profile, double quantile = 0.0);

// Fraction (by level count) of resolved levels with slope > D - delta.
double kappa(const LevelProfile& profile, double D, double delta);

// Area of the rasterized set {(x, f(x,y)) : (x,y) in mask} at resolution
// N: occupied (column, value-bin) pairs times 2^-2N.
double fubini_area(const GridFunction& f, const GridSet& mask, int N);

std::vector<int> scale_range(int lo, int hi);

}  // namespace hll
