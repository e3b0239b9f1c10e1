#pragma once

#include <cstdint>
#include <vector>

#include "hll/grid.hpp"

namespace hll {

// Log-log box-counting fit. The paper's box dimension is a limit; finite
// data gets one least-squares slope, the max deviation from the fitted
// line, and the successive pairwise slopes so liminf/limsup behaviour
// stays inspectable.
struct DimEstimate {
    std::vector<int> scales;
    std::vector<std::uint64_t> counts;
    double slope = 0.0;
    double residual = 0.0;
    std::vector<double> step_slopes;  // (log2 a_{N'} - log2 a_N) / (N' - N)
};

// Least-squares fit of log2(a_N) against N.
//  - all counts zero: the empty-set convention, slope 0;
//  - a zero among nonzero counts: inconsistent-input;
//  - fewer than 3 scales: insufficient-data.
DimEstimate box_dimension(const std::vector<std::pair<int, std::uint64_t>>& counts);

// Counts at scales [n_min, n_max] obtained by coarsening one fine grid.
std::vector<std::pair<int, std::uint64_t>> box_counts(const GridSet& g, int n_min, int n_max);

DimEstimate box_dimension(const GridSet& g, int n_min, int n_max);

}  // namespace hll
