#pragma once

#include <cstdint>
#include <vector>

#include "hll/grid.hpp"

namespace hll {

// Truncation of the sponge's infinite gap union. Generations with
// 2^-k^3 below half a cell cannot change occupancy at resolution N
// (verified in tests), so default_k_max keeps rasterization exact.
struct SpongeSpec {
    int k_max = 2;
    double alpha = 1.0;
};

int sponge_default_k_max(int N);
SpongeSpec sponge_spec_for(int N, double alpha = 1.0);

// Closed dyadic segment [lo, hi] / 2^scale_bits; degenerate points allowed.
struct DyadicSegment {
    unsigned __int128 lo = 0;
    unsigned __int128 hi = 0;
};

// F0 = [0,1/2] minus the open gaps of generations 2..k_max, as exact
// disjoint closed segments scaled by 2^scale_bits.
struct F0Segments {
    int scale_bits = 0;
    std::vector<DyadicSegment> segments;
};

F0Segments f0_segments(int k_max);

// Lebesgue measure of the truncated F0 (exact sum of segment lengths).
double f0_measure(int k_max);

// Upper bound on the measure removed by generations >= k (tail of the
// truncation), sum of 2^(k^2-1) gaps of width 2^-k^3 per generation.
double f0_removed_tail(int k);

// Exact measure of [lo,hi] intersect F0 (truncated at k_max).
double f0_measure_in(double lo, double hi, int k_max);

// x avoids every open gap (j*2^-k^2, j*2^-k^2 + 2^-k^3), 2 <= k <= k_max.
// Exact for every double input (doubles are dyadic rationals).
bool sponge_membership(double x, const SpongeSpec& spec);

// Occupancy of the 1-D cells [i*2^-N, (i+1)*2^-N] against F0.
std::vector<std::uint8_t> sponge_occupancy_1d(const SpongeSpec& spec, int N);

// F = F0 x F0 on the unit-cube grid; product structure makes the bitset
// the outer product of the 1-D occupancy row with itself.
GridSet rasterize_sponge(const SpongeSpec& spec, int N);

// Sum_{l>=k} 2^(l^2) * 2^(-alpha*l^3), the paper's gap tail.
double gap_tail_sum(int k, double alpha);

// Smallest k >= 2 with gap_tail_sum(k, alpha) <= p_m * 2^-k^2 / 1000.
int minimal_k(double alpha, double p_m);

}  // namespace hll
