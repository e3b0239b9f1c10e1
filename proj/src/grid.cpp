#include "hll/grid.hpp"

#include <bit>

namespace hll {

namespace {

void check_dims(int p, int N) {
    if (p < 1 || p > kMaxDim) fail("invalid-argument", "ambient dimension must be 1..3");
    if (N < 0) fail("invalid-argument", "resolution level must be nonnegative");
    if (p * N > 30) fail("invalid-argument", "grid too fine: p*N must be <= 30");
}

}  // namespace

GridSet::GridSet(int p, int N) : p_(p), N_(N) {
    check_dims(p, N);
    lo_.fill(0.0);
    hi_.fill(0.0);
    for (int i = 0; i < p; ++i) hi_[i] = 1.0;
    total_ = std::uint64_t{1} << (p * N);
    words_.assign((total_ + 63) / 64, 0);
}

GridSet::GridSet(int p, int N, const std::array<double, kMaxDim>& lo,
                 const std::array<double, kMaxDim>& hi)
    : GridSet(p, N) {
    lo_ = lo;
    hi_ = hi;
}

std::uint64_t GridSet::linear_index(const CellIndex& c) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < p_; ++i) {
        if (c.coords[i] >= cells_per_axis()) fail("invalid-argument", "cell index out of range");
        idx = (idx << N_) | c.coords[i];
    }
    return idx;
}

CellIndex GridSet::cell_at(std::uint64_t linear) const {
    CellIndex c;
    c.p = p_;
    const std::uint64_t mask = cells_per_axis() - 1;
    for (int i = p_ - 1; i >= 0; --i) {
        c.coords[i] = static_cast<std::uint32_t>(linear & mask);
        linear >>= N_;
    }
    return c;
}

bool GridSet::same_layout(const GridSet& other) const {
    return p_ == other.p_ && N_ == other.N_;
}

bool GridSet::operator==(const GridSet& other) const {
    return same_layout(other) && words_ == other.words_;
}

std::uint64_t cell_count(const GridSet& g) {
    std::uint64_t n = 0;
    for (std::uint64_t w : g.words()) n += std::popcount(w);
    return n;
}

GridSet coarsen(const GridSet& g, int dn) {
    if (dn <= 0) fail("invalid-argument", "coarsening step must be positive");
    if (dn > g.level()) fail("invalid-argument", "cannot coarsen below level 0");
    GridSet out(g.dim(), g.level() - dn, g.bounds_lo(), g.bounds_hi());
    // Walk fine occupied cells; shifting each coordinate gives the parent.
    const std::uint64_t total = g.total_cells();
    for (std::uint64_t base = 0; base < total; base += 64) {
        std::uint64_t w = g.words()[base >> 6];
        while (w) {
            const int b = std::countr_zero(w);
            w &= w - 1;
            CellIndex fine = g.cell_at(base + b);
            CellIndex parent;
            parent.p = fine.p;
            for (int i = 0; i < fine.p; ++i) parent.coords[i] = fine.coords[i] >> dn;
            out.set(parent);
        }
    }
    return out;
}

GridSet slice(const GridSet& g, int axis, std::uint32_t t) {
    if (g.dim() < 2) fail("invalid-argument", "slice needs ambient dimension >= 2");
    if (axis < 0 || axis >= g.dim()) fail("invalid-argument", "slice axis out of range");
    if (t >= g.cells_per_axis()) fail("invalid-argument", "slice index out of range");

    std::array<double, kMaxDim> lo{}, hi{};
    int k = 0;
    for (int i = 0; i < g.dim(); ++i) {
        if (i == axis) continue;
        lo[k] = g.bounds_lo()[i];
        hi[k] = g.bounds_hi()[i];
        ++k;
    }
    GridSet out(g.dim() - 1, g.level(), lo, hi);

    const std::uint64_t total = out.total_cells();
    for (std::uint64_t j = 0; j < total; ++j) {
        CellIndex rest = out.cell_at(j);
        CellIndex full;
        full.p = g.dim();
        int r = 0;
        for (int i = 0; i < g.dim(); ++i)
            full.coords[i] = (i == axis) ? t : rest.coords[r++];
        if (g.test(full)) out.set(j);
    }
    return out;
}

SliceAudit slice_audit(const GridSet& g, int axis, double eps, double s) {
    if (g.dim() < 2) fail("invalid-argument", "slice_audit needs ambient dimension >= 2");
    if (axis < 0 || axis >= g.dim()) fail("invalid-argument", "slice_audit axis out of range");
    const std::uint32_t rows = g.cells_per_axis();
    const double threshold = std::exp2((s - 1.0 + 2.0 * eps) * g.level());

    SliceAudit audit;
    for (std::uint32_t t = 0; t < rows; ++t) {
        const std::uint64_t n = cell_count(slice(g, axis, t));
        if (static_cast<double>(n) > threshold) ++audit.threshold_exceeders;
    }
    audit.fraction_violating =
        static_cast<double>(audit.threshold_exceeders) / static_cast<double>(rows);
    audit.bound = std::exp2(-eps * g.level());
    return audit;
}

GridSet outer_product_square(const std::vector<std::uint8_t>& occ1d,
                             const std::array<double, kMaxDim>& lo,
                             const std::array<double, kMaxDim>& hi) {
    int N = 0;
    while ((std::size_t{1} << N) < occ1d.size()) ++N;
    if ((std::size_t{1} << N) != occ1d.size())
        fail("invalid-argument", "occupancy row length must be a power of two");
    GridSet out(2, N, lo, hi);
    const std::uint32_t n = out.cells_per_axis();
    // Build the occupied-column bit pattern once, then stamp it on every
    // occupied row; row-major layout makes a row one contiguous bit run.
    std::vector<std::uint64_t> row_pattern((n + 63) / 64, 0);
    for (std::uint32_t j = 0; j < n; ++j)
        if (occ1d[j]) row_pattern[j >> 6] |= std::uint64_t{1} << (j & 63);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!occ1d[i]) continue;
        const std::uint64_t bit_base = std::uint64_t{i} * n;
        if ((bit_base & 63) == 0 && (n & 63) == 0) {
            const std::uint64_t word_base = bit_base >> 6;
            for (std::size_t w = 0; w < row_pattern.size(); ++w)
                out.words()[word_base + w] = row_pattern[w];
        } else {
            for (std::uint32_t j = 0; j < n; ++j)
                if (occ1d[j]) out.set(bit_base + j);
        }
    }
    return out;
}

}  // namespace hll
