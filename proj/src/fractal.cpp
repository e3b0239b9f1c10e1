#include "hll/fractal.hpp"

#include <algorithm>
#include <cmath>

namespace hll {

namespace {

using u128 = unsigned __int128;

constexpr int kMaxGapGeneration = 5;  // 2^-125 still fits the 128-bit scale

void check_spec(const SpongeSpec& spec) {
    if (spec.k_max < 2) fail("invalid-argument", "sponge k_max must be >= 2");
    if (spec.k_max > kMaxGapGeneration)
        fail("invalid-argument", "sponge k_max beyond exact-arithmetic range");
    if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        fail("invalid-argument", "alpha must lie in (0, 1]");
}

// Subtract the open gaps of generation k from each segment in place.
void subtract_generation(std::vector<DyadicSegment>& segments, int k, int scale_bits) {
    const int sp_bits = scale_bits - k * k;
    const int wd_bits = scale_bits - k * k * k;
    const u128 spacing = u128{1} << sp_bits;
    const u128 width = u128{1} << wd_bits;

    std::vector<DyadicSegment> out;
    out.reserve(segments.size() + 16);
    for (const DyadicSegment& seg : segments) {
        u128 cursor = seg.lo;
        u128 j = seg.lo >> sp_bits;
        bool alive = true;
        while (alive) {
            const u128 gap_lo = j * spacing;
            const u128 gap_hi = gap_lo + width;
            if (gap_lo > seg.hi) break;
            // left remainder [cursor, min(hi, gap_lo)]
            if (cursor <= gap_lo) {
                const u128 right = std::min(seg.hi, gap_lo);
                if (cursor <= right) out.push_back({cursor, right});
                cursor = gap_hi;
            } else if (cursor < gap_hi) {
                cursor = gap_hi;
            }
            if (cursor > seg.hi) alive = false;
            ++j;
        }
        if (alive && cursor <= seg.hi) out.push_back({cursor, seg.hi});
    }
    segments = std::move(out);
}

}  // namespace

int sponge_default_k_max(int N) {
    int k = 2;
    while (k * k * k < N + 1) ++k;
    return std::max(2, k);
}

SpongeSpec sponge_spec_for(int N, double alpha) {
    return SpongeSpec{sponge_default_k_max(N), alpha};
}

F0Segments f0_segments(int k_max) {
    SpongeSpec spec{k_max, 1.0};
    check_spec(spec);
    F0Segments result;
    result.scale_bits = k_max * k_max * k_max;
    const u128 half = u128{1} << (result.scale_bits - 1);
    result.segments = {DyadicSegment{0, half}};
    for (int k = 2; k <= k_max; ++k)
        subtract_generation(result.segments, k, result.scale_bits);
    return result;
}

double f0_measure(int k_max) {
    const F0Segments f0 = f0_segments(k_max);
    double total = 0.0;
    const double unit = std::exp2(-f0.scale_bits);
    for (const DyadicSegment& seg : f0.segments)
        total += static_cast<double>(seg.hi - seg.lo) * unit;
    return total;
}

double f0_removed_tail(int k) {
    double total = 0.0;
    for (int l = std::max(2, k); l <= 40; ++l) {
        const double term = std::exp2(static_cast<double>(l) * l - 1.0 -
                                      static_cast<double>(l) * l * l);
        total += term;
        if (term < 1e-300) break;
    }
    return total;
}

double f0_measure_in(double lo, double hi, int k_max) {
    if (!(lo <= hi)) fail("invalid-argument", "empty interval");
    const F0Segments f0 = f0_segments(k_max);
    const double unit = std::exp2(-f0.scale_bits);
    double total = 0.0;
    for (const DyadicSegment& seg : f0.segments) {
        const double a = std::max(lo, static_cast<double>(seg.lo) * unit);
        const double b = std::min(hi, static_cast<double>(seg.hi) * unit);
        if (b > a) total += b - a;
    }
    return total;
}

bool sponge_membership(double x, const SpongeSpec& spec) {
    check_spec(spec);
    if (!(x >= 0.0) || x > 0.5) fail("invalid-argument", "sponge membership defined on [0, 1/2]");
    for (int k = 2; k <= spec.k_max; ++k) {
        const double scaled_sp = std::ldexp(x, k * k);  // exact: power-of-two scaling
        const double j = std::floor(scaled_sp);
        if (!(scaled_sp > j)) continue;  // x is a gap left endpoint or on the lattice
        // x < j*2^-k^2 + 2^-k^3  <=>  x*2^k^3 < j*2^(k^3-k^2) + 1, exact in 128 bits
        const double scaled_wd = std::ldexp(x, k * k * k);
        const u128 rhs = (static_cast<u128>(j) << (k * k * k - k * k)) + 1;
        const u128 lhs_floor = static_cast<u128>(scaled_wd);
        if (lhs_floor < rhs) return false;  // inside the open gap
    }
    return true;
}

std::vector<std::uint8_t> sponge_occupancy_1d(const SpongeSpec& spec, int N) {
    check_spec(spec);
    if (N < 1 || N > 30) fail("invalid-argument", "resolution out of range");
    const int scale_bits = std::max(spec.k_max * spec.k_max * spec.k_max, N);
    F0Segments f0 = f0_segments(spec.k_max);
    // f0_segments always uses k_max^3 bits >= 8 >= ... lift if N is finer.
    const int lift = scale_bits - f0.scale_bits;
    if (lift > 0)
        for (DyadicSegment& seg : f0.segments) {
            seg.lo <<= lift;
            seg.hi <<= lift;
        }

    const std::uint32_t cells = 1u << N;
    std::vector<std::uint8_t> occ(cells, 0);
    const int cell_bits = scale_bits - N;
    std::size_t si = 0;
    for (std::uint32_t i = 0; i < cells; ++i) {
        const u128 cell_lo = u128{i} << cell_bits;
        const u128 cell_hi = u128{i + 1} << cell_bits;
        while (si < f0.segments.size() && f0.segments[si].hi < cell_lo) ++si;
        if (si < f0.segments.size() && f0.segments[si].lo <= cell_hi) occ[i] = 1;
    }
    return occ;
}

GridSet rasterize_sponge(const SpongeSpec& spec, int N) {
    const std::vector<std::uint8_t> occ = sponge_occupancy_1d(spec, N);
    std::array<double, kMaxDim> lo{0.0, 0.0, 0.0};
    std::array<double, kMaxDim> hi{0.5, 0.5, 0.0};
    return outer_product_square(occ, lo, hi);
}

double gap_tail_sum(int k, double alpha) {
    if (k < 2) fail("invalid-argument", "gap tail starts at k >= 2");
    if (!(alpha > 0.0) || alpha > 1.0) fail("invalid-argument", "alpha must lie in (0, 1]");
    double total = 0.0;
    for (int l = k; l <= 200; ++l) {
        const double exponent =
            static_cast<double>(l) * l - alpha * static_cast<double>(l) * l * l;
        const double term = std::exp2(exponent);
        total += term;
        if (term < total * 1e-18 || term < 1e-300) break;
    }
    return total;
}

int minimal_k(double alpha, double p_m) {
    if (!(p_m > 0.0)) fail("invalid-argument", "p_m must be positive");
    for (int k = 2; k <= 64; ++k) {
        const double threshold = p_m * std::exp2(-static_cast<double>(k) * k) / 1000.0;
        if (gap_tail_sum(k, alpha) <= threshold) return k;
    }
    fail("invalid-argument", "no admissible k found");  // unreachable: tail wins by k ~ 1/alpha
}

}  // namespace hll
