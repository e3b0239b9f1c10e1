#include "hll/level.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace hll {

namespace {

struct CellSpan {
    std::uint32_t col = 0;  // coords[0], used by fubini_area
    double lo = 0.0;
    double hi = 0.0;
};

// Value span of every occupied cell at resolution N, reduced over all of
// f's lattice points inside the closed cell (the corner span at f's own
// resolution, merged up). Coarse counts then nest the way true level
// covers do; corner-only spans undercount at coarse scales and fake
// steeper growth.
std::vector<CellSpan> cell_spans(const GridFunction& f, const GridSet& mask, int N,
                                 bool holder_slack) {
    if (mask.dim() != f.dim()) fail("invalid-argument", "mask dimension mismatch");
    if (N > f.level() || N > mask.level() || N < 1)
        fail("invalid-argument", "scale must not exceed the grid resolutions");

    const GridSet coarse = (N == mask.level()) ? mask : coarsen(mask, mask.level() - N);
    const int stride_bits = f.level() - N;
    const std::uint32_t pts = (1u << stride_bits) + 1;
    const double slack =
        holder_slack ? f.c() * pow_abs(std::sqrt(static_cast<double>(f.dim())) * std::exp2(-N),
                                       f.alpha())
                     : 0.0;

    std::vector<CellSpan> spans;
    const std::uint64_t total = coarse.total_cells();
    const int p = f.dim();
    for (std::uint64_t lin = 0; lin < total; ++lin) {
        if (!coarse.test(lin)) continue;
        const CellIndex c = coarse.cell_at(lin);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        std::array<std::uint32_t, kMaxDim> it{};
        while (true) {
            std::array<std::uint32_t, kMaxDim> v{};
            for (int i = 0; i < p; ++i) v[i] = (c.coords[i] << stride_bits) + it[i];
            const double val = f[f.vertex_index(v)];
            lo = std::min(lo, val);
            hi = std::max(hi, val);
            int axis = p - 1;
            while (axis >= 0) {
                if (++it[axis] < pts) break;
                it[axis] = 0;
                --axis;
            }
            if (axis < 0) break;
        }
        spans.push_back({c.coords[0], lo - slack, hi + slack});
    }
    return spans;
}

void check_scales(const std::vector<int>& scales) {
    if (scales.size() < 3) fail("insufficient-data", "need at least 3 scales");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (scales[i] <= scales[i - 1]) fail("invalid-argument", "scales must be increasing");
}

}  // namespace

std::size_t LevelProfile::nonempty_count() const {
    std::size_t n = 0;
    for (std::uint8_t e : empty)
        if (!e) ++n;
    return n;
}

std::size_t LevelProfile::resolved_count() const {
    std::size_t n = 0;
    for (std::uint8_t r : resolved)
        if (r) ++n;
    return n;
}

std::uint64_t level_cells(const GridFunction& f, const GridSet& mask, double r, int N,
                          bool holder_slack) {
    std::uint64_t n = 0;
    for (const CellSpan& s : cell_spans(f, mask, N, holder_slack))
        if (s.lo <= r && r <= s.hi) ++n;
    return n;
}

namespace {

// Fit over the maximal scale suffix with counts >= kResolveFloor; a
// level whose cover never clears the floor on 3+ scales has no usable
// slope at this window (its counts are resolution turn-on, not growth).
DimEstimate dim_from_counts(const std::vector<int>& scales,
                            const std::vector<std::uint64_t>& counts, bool* is_empty,
                            bool* is_resolved) {
    const bool empty = counts.back() == 0;
    std::size_t start = scales.size();
    while (start > 0 && counts[start - 1] >= kResolveFloor) --start;
    std::vector<std::pair<int, std::uint64_t>> kept;
    for (std::size_t i = start; i < scales.size(); ++i) kept.emplace_back(scales[i], counts[i]);
    const bool resolved = !empty && kept.size() >= 3;
    if (is_empty) *is_empty = empty;
    if (is_resolved) *is_resolved = resolved;
    if (!resolved) return DimEstimate{};
    return box_dimension(kept);
}

}  // namespace

DimEstimate level_dim(const GridFunction& f, const GridSet& mask, double r,
                      const std::vector<int>& scales, bool* is_empty, bool* is_resolved) {
    check_scales(scales);
    std::vector<std::uint64_t> counts;
    counts.reserve(scales.size());
    for (int s : scales) counts.push_back(level_cells(f, mask, r, s));
    return dim_from_counts(scales, counts, is_empty, is_resolved);
}

LevelProfile level_sweep(const GridFunction& f, const GridSet& mask, int level_count,
                         const std::vector<int>& scales, bool holder_slack) {
    if (level_count < 16) fail("invalid-argument", "level sweep needs at least 16 levels");
    check_scales(scales);

    const auto [lo, hi] = value_range(f, mask);
    LevelProfile profile;
    profile.scales = scales;
    const std::size_t L = (hi > lo) ? static_cast<std::size_t>(level_count) : 1;
    profile.level_spacing = (L > 1) ? (hi - lo) / static_cast<double>(L - 1) : 0.0;
    for (std::size_t l = 0; l < L; ++l)
        profile.levels.push_back(lo + profile.level_spacing * static_cast<double>(l));

    profile.counts.assign(L, std::vector<std::uint64_t>(scales.size(), 0));
    for (std::size_t si = 0; si < scales.size(); ++si) {
        // Each cell straddles a contiguous run of levels; a difference
        // array turns the sweep into one pass over cells plus levels.
        std::vector<std::int64_t> diff(L + 1, 0);
        for (const CellSpan& s : cell_spans(f, mask, scales[si], holder_slack)) {
            std::int64_t first, last;
            if (profile.level_spacing == 0.0) {
                first = (s.lo <= lo && lo <= s.hi) ? 0 : 1;
                last = 0;
            } else {
                first = static_cast<std::int64_t>(
                    std::ceil((s.lo - lo) / profile.level_spacing - 1e-12));
                last = static_cast<std::int64_t>(
                    std::floor((s.hi - lo) / profile.level_spacing + 1e-12));
            }
            first = std::max<std::int64_t>(first, 0);
            last = std::min<std::int64_t>(last, static_cast<std::int64_t>(L) - 1);
            if (first > last) continue;
            diff[static_cast<std::size_t>(first)] += 1;
            diff[static_cast<std::size_t>(last) + 1] -= 1;
        }
        std::int64_t running = 0;
        for (std::size_t l = 0; l < L; ++l) {
            running += diff[l];
            profile.counts[l][si] = static_cast<std::uint64_t>(running);
        }
    }

    profile.dims.resize(L);
    profile.empty.assign(L, 0);
    profile.resolved.assign(L, 0);
    for (std::size_t l = 0; l < L; ++l) {
        bool empty = false, res = false;
        profile.dims[l] = dim_from_counts(scales, profile.counts[l], &empty, &res);
        profile.empty[l] = empty ? 1 : 0;
        profile.resolved[l] = res ? 1 : 0;
    }
    const std::size_t nonempty = profile.nonempty_count();
    profile.range_measure =
        nonempty > 1 ? static_cast<double>(nonempty - 1) * profile.level_spacing : 0.0;
    return profile;
}

double dstar_estimate(const LevelProfile& profile, double quantile) {
    std::vector<double> slopes;
    for (std::size_t l = 0; l < profile.levels.size(); ++l)
        if (profile.resolved[l]) slopes.push_back(profile.dims[l].slope);
    if (slopes.empty()) fail("empty-range", "no resolved level in the profile");
    std::sort(slopes.begin(), slopes.end());
    const double q =
        quantile > 0.0 ? quantile : 1.0 - 1.0 / static_cast<double>(profile.levels.size());
    const auto idx = static_cast<std::size_t>(
        std::floor(static_cast<double>(slopes.size() - 1) * std::clamp(q, 0.0, 1.0)));
    return slopes[idx];
}

double kappa(const LevelProfile& profile, double D, double delta) {
    if (!(profile.range_measure > 0.0)) fail("empty-range", "profile has zero range measure");
    std::size_t qualifying = 0, resolved = 0;
    for (std::size_t l = 0; l < profile.levels.size(); ++l) {
        if (!profile.resolved[l]) continue;
        ++resolved;
        if (profile.dims[l].slope > D - delta) ++qualifying;
    }
    if (resolved == 0) fail("empty-range", "no resolved level in the profile");
    return static_cast<double>(qualifying) / static_cast<double>(resolved);
}

double fubini_area(const GridFunction& f, const GridSet& mask, int N) {
    if (f.dim() != 2 || mask.dim() != 2) fail("invalid-argument", "fubini_area needs p = 2");
    const std::vector<CellSpan> spans = cell_spans(f, mask, N, false);

    const double cells = std::exp2(N);
    std::int64_t bin_lo = 0, bin_hi = -1;
    for (const CellSpan& s : spans) {
        const auto b0 = static_cast<std::int64_t>(std::floor(s.lo * cells));
        const auto b1 = static_cast<std::int64_t>(std::floor(s.hi * cells));
        if (bin_hi < bin_lo) {
            bin_lo = b0;
            bin_hi = b1;
        } else {
            bin_lo = std::min(bin_lo, b0);
            bin_hi = std::max(bin_hi, b1);
        }
    }
    if (bin_hi < bin_lo) return 0.0;

    const auto width = static_cast<std::uint64_t>(bin_hi - bin_lo + 1);
    const auto columns = static_cast<std::uint64_t>(cells);
    std::vector<std::uint64_t> marked((columns * width + 63) / 64, 0);
    for (const CellSpan& s : spans) {
        const auto b0 = static_cast<std::uint64_t>(
            static_cast<std::int64_t>(std::floor(s.lo * cells)) - bin_lo);
        const auto b1 = static_cast<std::uint64_t>(
            static_cast<std::int64_t>(std::floor(s.hi * cells)) - bin_lo);
        const std::uint64_t base = s.col * width;
        for (std::uint64_t b = b0; b <= b1; ++b) {
            const std::uint64_t bit = base + b;
            marked[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
    }
    std::uint64_t occupied = 0;
    for (std::uint64_t w : marked) occupied += std::popcount(w);
    return static_cast<double>(occupied) * std::exp2(-2 * N);
}

std::vector<int> scale_range(int lo, int hi) {
    if (lo > hi) fail("invalid-argument", "empty scale range");
    std::vector<int> out;
    for (int s = lo; s <= hi; ++s) out.push_back(s);
    return out;
}

}  // namespace hll
