#include "hll/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hll {

namespace {

constexpr std::uint64_t kStratifiedSeed = 0x484c4c53414d50ull;

void check_holder_params(double alpha, double c) {
    if (!(alpha > 0.0) || alpha > 1.0) fail("invalid-argument", "alpha must lie in (0, 1]");
    if (!(c > 0.0)) fail("invalid-argument", "Hoelder constant must be positive");
}

}  // namespace

HolderSample::HolderSample(std::vector<Vec> points, Eigen::VectorXd values, double alpha,
                           double c)
    : points_(std::move(points)), values_(std::move(values)), alpha_(alpha), c_(c) {
    check_holder_params(alpha, c);
    if (points_.size() < 1 || static_cast<Eigen::Index>(points_.size()) != values_.size())
        fail("invalid-argument", "points and values must match and be nonempty");
    const double slack = 1e-12 * std::max(1.0, c_);
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            const double d = dist_alpha(points_[i], points_[j], alpha_);
            const double dv = std::abs(values_[static_cast<Eigen::Index>(i)] -
                                       values_[static_cast<Eigen::Index>(j)]);
            if (dv > c_ * d + slack)
                fail("invalid-argument", "sample violates its Hoelder bound");
        }
}

HolderSample HolderSample::repair(std::vector<Vec> points, const Eigen::VectorXd& raw_values,
                                  double alpha, double c) {
    check_holder_params(alpha, c);
    const auto n = points.size();
    Eigen::VectorXd fixed(n);
    for (std::size_t i = 0; i < n; ++i) {
        double m = raw_values[static_cast<Eigen::Index>(i)];
        for (std::size_t j = 0; j < n; ++j)
            m = std::min(m, raw_values[static_cast<Eigen::Index>(j)] +
                                c * dist_alpha(points[i], points[j], alpha));
        fixed[static_cast<Eigen::Index>(i)] = m;
    }
    return HolderSample(std::move(points), std::move(fixed), alpha, c);
}

GridFunction::GridFunction(int p, int N, double alpha, double c)
    : p_(p), N_(N), alpha_(alpha), c_(c) {
    if (p < 1 || p > kMaxDim) fail("invalid-argument", "ambient dimension must be 1..3");
    if (N < 1 || N > 30) fail("invalid-argument", "resolution out of range");
    check_holder_params(alpha, c);
    std::uint64_t total = 1;
    for (int i = 0; i < p; ++i) total *= vertices_per_axis();
    if (total > (std::uint64_t{1} << 28)) fail("invalid-argument", "vertex lattice too large");
    values_ = Eigen::ArrayXd::Zero(static_cast<Eigen::Index>(total));
}

GridFunction GridFunction::from_function(int p, int N, double alpha, double c,
                                         const std::function<double(const Vec&)>& fn) {
    GridFunction g(p, N, alpha, c);
    const std::uint64_t total = g.vertex_count();
    for (std::uint64_t v = 0; v < total; ++v) g[v] = fn(g.vertex_position(v));
    return g;
}

std::uint64_t GridFunction::vertex_index(const std::array<std::uint32_t, kMaxDim>& coords) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < p_; ++i) {
        if (coords[i] >= vertices_per_axis()) fail("invalid-argument", "vertex index out of range");
        idx = idx * vertices_per_axis() + coords[i];
    }
    return idx;
}

std::array<std::uint32_t, kMaxDim> GridFunction::vertex_at(std::uint64_t linear) const {
    std::array<std::uint32_t, kMaxDim> coords{};
    for (int i = p_ - 1; i >= 0; --i) {
        coords[i] = static_cast<std::uint32_t>(linear % vertices_per_axis());
        linear /= vertices_per_axis();
    }
    return coords;
}

Vec GridFunction::vertex_position(std::uint64_t linear) const {
    const auto coords = vertex_at(linear);
    Vec x(p_);
    const double h = std::exp2(-N_);
    for (int i = 0; i < p_; ++i) x[i] = coords[i] * h;
    return x;
}

double GridFunction::sample(const Vec& x) const {
    const double cells = std::exp2(N_);
    std::array<std::uint32_t, kMaxDim> base{};
    std::array<double, kMaxDim> frac{};
    for (int i = 0; i < p_; ++i) {
        double t = std::clamp(x[i], 0.0, 1.0) * cells;
        double fl = std::floor(t);
        if (fl >= cells) fl = cells - 1.0;
        base[i] = static_cast<std::uint32_t>(fl);
        frac[i] = t - fl;
    }
    double acc = 0.0;
    const std::uint32_t corners = 1u << p_;
    for (std::uint32_t m = 0; m < corners; ++m) {
        double w = 1.0;
        std::array<std::uint32_t, kMaxDim> c = base;
        for (int i = 0; i < p_; ++i) {
            if ((m >> i) & 1) {
                w *= frac[i];
                ++c[i];
            } else {
                w *= 1.0 - frac[i];
            }
        }
        if (w != 0.0) acc += w * values_[static_cast<Eigen::Index>(vertex_index(c))];
    }
    return acc;
}

namespace {

// Shared pair-quotient scan over an indexed point/value view.
struct PairView {
    std::function<Vec(std::uint64_t)> point;
    std::function<double(std::uint64_t)> value;
    std::uint64_t size = 0;
};

HolderEstimate scan_pairs(const PairView& view, double alpha, std::uint64_t pair_budget) {
    HolderEstimate est;
    const std::uint64_t n = view.size;
    if (n < 2) fail("invalid-argument", "need at least two points");

    auto quotient = [&](std::uint64_t i, std::uint64_t j) {
        const double d = dist_alpha(view.point(i), view.point(j), alpha);
        if (d == 0.0) return 0.0;
        return std::abs(view.value(i) - view.value(j)) / d;
    };

    if (n * (n - 1) / 2 <= pair_budget || n * n <= pair_budget) {
        est.exact = true;
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = i + 1; j < n; ++j)
                est.value = std::max(est.value, quotient(i, j));
        return est;
    }

    // Deterministic stratified sample: half uniform far pairs, half
    // near pairs around random base indices (local quotients usually
    // dominate for rough functions).
    est.exact = false;
    std::mt19937_64 rng(kStratifiedSeed);
    const std::uint64_t rounds = std::max<std::uint64_t>(pair_budget / 2, 1);
    for (std::uint64_t round = 0; round < rounds; ++round) {
        const std::uint64_t i = rng() % n;
        const std::uint64_t j = rng() % n;
        if (i != j) est.value = std::max(est.value, quotient(i, j));
        const std::uint64_t span = 1 + rng() % 64;
        const std::uint64_t k = std::min<std::uint64_t>(n - 1, i + span);
        if (k != i) est.value = std::max(est.value, quotient(i, k));
    }
    return est;
}

}  // namespace

HolderEstimate holder_constant(const HolderSample& s, double alpha, std::uint64_t pair_budget) {
    PairView view;
    view.point = [&](std::uint64_t i) { return s.points()[i]; };
    view.value = [&](std::uint64_t i) { return s.values()[static_cast<Eigen::Index>(i)]; };
    view.size = s.size();
    return scan_pairs(view, alpha, pair_budget);
}

HolderEstimate holder_constant(const GridFunction& f, double alpha, std::uint64_t pair_budget) {
    PairView view;
    view.point = [&](std::uint64_t i) { return f.vertex_position(i); };
    view.value = [&](std::uint64_t i) { return f[i]; };
    view.size = f.vertex_count();
    return scan_pairs(view, alpha, pair_budget);
}

HolderEstimate holder_constant_masked(const GridFunction& f, const GridSet& mask, double alpha,
                                      std::uint64_t pair_budget) {
    const std::vector<std::uint64_t> verts = mask_vertices(f, mask);
    PairView view;
    view.point = [&](std::uint64_t i) { return f.vertex_position(verts[i]); };
    view.value = [&](std::uint64_t i) { return f[verts[i]]; };
    view.size = verts.size();
    return scan_pairs(view, alpha, pair_budget);
}

std::vector<std::uint64_t> mask_vertices(const GridFunction& f, const GridSet& mask) {
    if (mask.dim() != f.dim()) fail("invalid-argument", "mask dimension mismatch");
    if (mask.level() > f.level()) fail("invalid-argument", "mask finer than function grid");
    const int stride_bits = f.level() - mask.level();
    std::vector<std::uint8_t> hit(f.vertex_count(), 0);
    const std::uint64_t cells = mask.total_cells();
    for (std::uint64_t lin = 0; lin < cells; ++lin) {
        if (!mask.test(lin)) continue;
        const CellIndex c = mask.cell_at(lin);
        const std::uint32_t corners = 1u << mask.dim();
        for (std::uint32_t m = 0; m < corners; ++m) {
            std::array<std::uint32_t, kMaxDim> v{};
            for (int i = 0; i < mask.dim(); ++i)
                v[i] = (c.coords[i] + ((m >> i) & 1)) << stride_bits;
            hit[f.vertex_index(v)] = 1;
        }
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < hit.size(); ++v)
        if (hit[v]) out.push_back(v);
    return out;
}

double mcshane_extend(const HolderSample& s, const Vec& x) {
    const auto n = s.size();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double d2 = (x - s.points()[i]).squaredNorm();
        // The minimum at a sample point is the sample value; return it
        // directly so agreement on the sample set is exact.
        if (d2 == 0.0) return s.values()[static_cast<Eigen::Index>(i)];
        m = std::min(m, s.values()[static_cast<Eigen::Index>(i)] +
                            s.c() * pow_abs(std::sqrt(d2), s.alpha()));
    }
    return m;
}

GridFunction mcshane_extend_to_grid(const HolderSample& s, int p, int N) {
    GridFunction g(p, N, s.alpha(), s.c());
    parallel_for(g.vertex_count(), [&](std::size_t b, std::size_t e) {
        for (std::size_t v = b; v < e; ++v)
            g[v] = mcshane_extend(s, g.vertex_position(v));
    });
    return g;
}

GridFunction clamp_combine(const GridFunction& f_n, const GridFunction& f_nk, double bound) {
    if (!f_n.same_grid(f_nk)) fail("invalid-argument", "clamp_combine needs a shared grid");
    if (!(bound >= 0.0)) fail("invalid-argument", "clamp bound must be nonnegative");
    GridFunction out(f_n.dim(), f_n.level(), f_nk.alpha(), std::max(f_n.c(), f_nk.c()));
    out.values() = f_nk.values().min(f_n.values() + bound).max(f_n.values() - bound);
    return out;
}

std::pair<double, double> value_range(const GridFunction& f, const GridSet& mask) {
    const std::vector<std::uint64_t> verts = mask_vertices(f, mask);
    if (verts.empty()) fail("empty-range", "mask has no occupied cells");
    double lo = f[verts[0]], hi = f[verts[0]];
    for (std::uint64_t v : verts) {
        lo = std::min(lo, f[v]);
        hi = std::max(hi, f[v]);
    }
    return {lo, hi};
}

}  // namespace hll
