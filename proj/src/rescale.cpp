#include "hll/rescale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hll {

namespace {

// Cylinder descent: follow the child whose cube image stays closest to
// x until the copy diameter falls into ((q_min)*target, target].
AffineMap descend_to_diameter(const IFS& ifs, const Vec& x, double set_diameter, double target,
                              double* ratio_out, double* diameter_out) {
    AffineMap word = AffineMap::identity(ifs.p);
    double ratio = 1.0;
    double diameter = set_diameter;
    int guard = 0;
    while (diameter > target) {
        if (++guard > 4096) fail("L-too-small", "cylinder descent does not terminate");
        double best = std::numeric_limits<double>::infinity();
        const Similarity* pick = nullptr;
        for (const Similarity& s : ifs.maps) {
            const AffineMap child = word.then_inner(s, ifs.p);
            // distance from x to the child's cube image (axis box; the
            // preset systems carry no rotation)
            double d2 = 0.0;
            for (int i = 0; i < ifs.p; ++i) {
                const double lo = child.offset[i];
                const double hi = child.offset[i] + child.scale;
                const double c = std::clamp(x[i], lo, hi);
                d2 += sqr(x[i] - c);
            }
            if (d2 < best) {
                best = d2;
                pick = &s;
            }
        }
        word = word.then_inner(*pick, ifs.p);
        ratio *= pick->ratio;
        diameter *= pick->ratio;
    }
    *ratio_out = ratio;
    *diameter_out = diameter;
    return word;
}

double set_diameter_estimate(const GridFunction& grid_probe, const GridSet& mask) {
    // diameter of the rasterized attractor from its occupied-cell extent
    const std::vector<std::uint64_t> verts = mask_vertices(grid_probe, mask);
    if (verts.empty()) fail("invalid-argument", "mask has no occupied cells");
    Vec lo = grid_probe.vertex_position(verts.front());
    Vec hi = lo;
    for (std::uint64_t v : verts) {
        const Vec x = grid_probe.vertex_position(v);
        lo = lo.cwiseMin(x);
        hi = hi.cwiseMax(x);
    }
    return (hi - lo).norm();
}

}  // namespace

RescaledCopy rescaled_copy(const RescaleInputs& in) {
    if (!in.f_n || !in.f_0 || !in.ifs || !in.mask) fail("invalid-argument", "missing inputs");
    if (!(in.c_n > 0.0) || !(in.c_n < 1.0))
        fail("invalid-argument", "f_n must be c_n-Hoelder with c_n < 1");
    if (!(in.alpha > 0.0) || !(in.alpha < 1.0))
        fail("invalid-argument", "the rescaled-copy construction needs 0 < alpha < 1");
    in.ifs->validate();
    for (const Similarity& s : in.ifs->maps)
        if (s.angle != 0.0)
            fail("invalid-argument", "rescaled_copy supports rotation-free systems only");

    const GridSet& mask = *in.mask;
    const int p = mask.dim();
    const int N = in.f_0->level();
    const double bound = 1.0 / (in.n + in.k);
    const double c_star = (1.0 + in.c_n) / 2.0;

    // f_n on the working grid plus its range over the mask
    GridFunction fn_grid = GridFunction::from_function(
        p, N, in.alpha, in.c_n, [&](const Vec& x) { return in.f_n->evaluate(x); });
    const auto [m_n, M_n] = value_range(fn_grid, mask);
    if (!(M_n > m_n)) fail("invalid-argument", "f_n has degenerate range on the mask");
    const double K = std::max(1.0, in.lipschitz);

    const std::vector<std::uint64_t> anchors_pool = mask_vertices(fn_grid, mask);
    const double diam_f = set_diameter_estimate(fn_grid, mask);

    RescaledCopy out{fn_grid, {}, 0, bound, c_star, m_n, M_n, K, {}};

    int L = static_cast<int>(std::floor((in.n + in.k) * (M_n - m_n + 1.0))) + 1;
    const double anchor_tol = K * std::exp2(-N);

    for (int attempt = 0; attempt < 32; ++attempt, L *= 2) {
        const double spacing = (M_n - m_n) / L;
        const double size_target = std::pow(spacing / 3.0, 1.0 / in.alpha);
        // first inequality of the size selection: copies must undershoot
        // the anchor spacing divided by 3K
        if (!(spacing / (3.0 * K) > size_target)) continue;
        if (!((0.5 + in.c_n) * spacing / 3.0 < bound)) continue;

        std::vector<Placement> placements;
        bool ok = true;
        for (int t = 1; t < L && ok; ++t) {
            const double target_level = m_n + spacing * t;
            std::uint64_t best_v = 0;
            double best_err = std::numeric_limits<double>::infinity();
            for (std::uint64_t v : anchors_pool) {
                const double err = std::abs(fn_grid[v] - target_level);
                if (err < best_err) {
                    best_err = err;
                    best_v = v;
                }
            }
            if (best_err > anchor_tol)
                fail("level-not-attained", "no grid vertex near level p(t)");
            Placement pl;
            pl.t = t;
            pl.anchor = fn_grid.vertex_position(best_v);
            pl.level = fn_grid[best_v];
            pl.map = descend_to_diameter(*in.ifs, pl.anchor, diam_f, size_target, &pl.ratio,
                                         &pl.copy_diameter);
            if (!(pl.copy_diameter > in.ifs->q_min() * size_target)) ok = false;
            placements.push_back(std::move(pl));
        }
        if (!ok) continue;

        // pairwise disjointness: the sampling windows are the closed cube
        // images, so require a strict gap along some axis
        for (std::size_t a = 0; a < placements.size() && ok; ++a)
            for (std::size_t b = a + 1; b < placements.size() && ok; ++b) {
                const AffineMap& ma = placements[a].map;
                const AffineMap& mb = placements[b].map;
                bool separated = false;
                for (int i = 0; i < p && !separated; ++i) {
                    if (ma.offset[i] + ma.scale < mb.offset[i] ||
                        mb.offset[i] + mb.scale < ma.offset[i])
                        separated = true;
                }
                if (!separated) ok = false;
            }
        if (!ok) continue;

        // copy samples: grid vertices inside each placed cube image get
        // the glued value f_n(x(t)) + q^alpha (f_0(inv x) - f_0(inv x(t)));
        // the anchor itself is always a sample so the gluing is exact there
        std::vector<Vec> sample_points;
        std::vector<double> sample_values;
        std::vector<std::uint64_t> sample_ids;
        for (const Placement& pl : placements) {
            const double qa = std::pow(pl.ratio, in.alpha);
            Vec anchor_pre = pl.map.apply_inverse(pl.anchor);
            for (int i = 0; i < p; ++i) anchor_pre[i] = std::clamp(anchor_pre[i], 0.0, 1.0);
            const double f0_at_anchor = in.f_0->sample(anchor_pre);

            sample_points.push_back(pl.anchor);
            sample_values.push_back(pl.level);
            std::array<std::uint32_t, kMaxDim> av{};
            const double cells = std::exp2(N);
            for (int i = 0; i < p; ++i)
                av[i] = static_cast<std::uint32_t>(std::lround(pl.anchor[i] * cells));
            sample_ids.push_back(fn_grid.vertex_index(av));

            std::array<std::uint32_t, kMaxDim> lo_v{}, hi_v{};
            bool window_empty = false;
            for (int i = 0; i < p; ++i) {
                const double wlo = std::max(0.0, std::ceil(pl.map.offset[i] * cells));
                const double whi =
                    std::min(cells, std::floor((pl.map.offset[i] + pl.map.scale) * cells));
                if (whi < wlo) {
                    window_empty = true;
                    break;
                }
                lo_v[i] = static_cast<std::uint32_t>(wlo);
                hi_v[i] = static_cast<std::uint32_t>(whi);
            }
            if (window_empty) continue;
            std::array<std::uint32_t, kMaxDim> it = lo_v;
            while (true) {
                const std::uint64_t vid = fn_grid.vertex_index(it);
                const Vec x = fn_grid.vertex_position(vid);
                if ((x - pl.anchor).squaredNorm() != 0.0) {
                    Vec pre = pl.map.apply_inverse(x);
                    for (int i = 0; i < p; ++i) pre[i] = std::clamp(pre[i], 0.0, 1.0);
                    sample_points.push_back(x);
                    sample_values.push_back(pl.level + qa * (in.f_0->sample(pre) - f0_at_anchor));
                    sample_ids.push_back(vid);
                }
                int axis = p - 1;
                while (axis >= 0) {
                    if (++it[axis] <= hi_v[axis]) break;
                    it[axis] = lo_v[axis];
                    --axis;
                }
                if (axis < 0) break;
            }
        }

        // Claim 2 on the sample set, with margin; a violation means the
        // copies are still too coarse for this L.
        for (std::size_t a = 0; a < sample_points.size() && ok; ++a)
            for (std::size_t b = a + 1; b < sample_points.size() && ok; ++b) {
                const double d = dist_alpha(sample_points[a], sample_points[b], in.alpha);
                if (d == 0.0) continue;
                if (std::abs(sample_values[a] - sample_values[b]) >
                    c_star * (1.0 - 1e-9) * d)
                    ok = false;
            }
        if (!ok) continue;

        Eigen::VectorXd vals(static_cast<Eigen::Index>(sample_values.size()));
        for (std::size_t i = 0; i < sample_values.size(); ++i)
            vals[static_cast<Eigen::Index>(i)] = sample_values[i];
        HolderSample gathered(sample_points, vals, in.alpha, c_star);
        GridFunction f_nk = mcshane_extend_to_grid(gathered, p, N);
        out.f_star = clamp_combine(fn_grid, f_nk, bound);
        out.f_star.set_holder(in.alpha, c_star);
        out.placements = std::move(placements);
        out.L = L;
        out.sample_vertices = std::move(sample_ids);
        return out;
    }
    fail("L-too-small", "no admissible L within the retry budget");
}

}  // namespace hll
