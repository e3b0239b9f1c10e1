#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hll/common.hpp"

namespace hll {

// Cell address on the dyadic grid: coords[i] in [0, 2^N).
struct CellIndex {
    int p = 0;
    std::array<std::uint32_t, kMaxDim> coords{};
};

// Occupancy set over the closed 2^-N grid hypercubes of the unit cube.
//
// Storage always indexes the full unit-cube lattice {0,...,2^N-1}^p in
// row-major order (coords[0] slowest). `bounds_lo/hi` record the ambient
// sub-box the rasterized set lives in ([0,1]^p by default, [0,1/2]^2 for
// the sponge); cells outside it are simply never set. Instances are
// treated as immutable once built, so shared concurrent reads are safe.
class GridSet {
public:
    GridSet(int p, int N);
    GridSet(int p, int N, const std::array<double, kMaxDim>& lo,
            const std::array<double, kMaxDim>& hi);

    int dim() const { return p_; }
    int level() const { return N_; }
    std::uint32_t cells_per_axis() const { return 1u << N_; }
    std::uint64_t total_cells() const { return total_; }

    const std::array<double, kMaxDim>& bounds_lo() const { return lo_; }
    const std::array<double, kMaxDim>& bounds_hi() const { return hi_; }

    std::uint64_t linear_index(const CellIndex& c) const;
    CellIndex cell_at(std::uint64_t linear) const;

    bool test(std::uint64_t linear) const {
        return (words_[linear >> 6] >> (linear & 63)) & 1u;
    }
    bool test(const CellIndex& c) const { return test(linear_index(c)); }
    void set(std::uint64_t linear) { words_[linear >> 6] |= 1ull << (linear & 63); }
    void set(const CellIndex& c) { set(linear_index(c)); }

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    bool same_layout(const GridSet& other) const;
    bool operator==(const GridSet& other) const;

private:
    int p_;
    int N_;
    std::array<double, kMaxDim> lo_{};
    std::array<double, kMaxDim> hi_{};
    std::uint64_t total_;
    std::vector<std::uint64_t> words_;
};

// a_N: number of occupied cells.
std::uint64_t cell_count(const GridSet& g);

// Resolution N - dn; a coarse cell is occupied iff any of its 2^(p*dn)
// fine children is. dn > N signals invalid-argument.
GridSet coarsen(const GridSet& g, int dn);

// (p-1)-dimensional section at grid row t along `axis`.
GridSet slice(const GridSet& g, int axis, std::uint32_t t);

struct SliceAudit {
    double fraction_violating = 0.0;  // share of slice indices t over the threshold
    double bound = 0.0;               // 2^(-eps*N), the decay the slicing lemma claims
    std::uint64_t threshold_exceeders = 0;
};

// Counts slices t with a_N(slice_t) > 2^((s-1+2*eps)*N) against the
// lemma's measure bound 2^(-eps*N). The caller asserts fraction <= bound
// when auditing the claim.
SliceAudit slice_audit(const GridSet& g, int axis, double eps, double s);

// Per-axis occupancy run from a membership row; used by rasterizers.
GridSet outer_product_square(const std::vector<std::uint8_t>& occ1d,
                             const std::array<double, kMaxDim>& lo,
                             const std::array<double, kMaxDim>& hi);

}  // namespace hll
