#include "hll/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "hll/fractal.hpp"
#include "hll/ifs.hpp"
#include "hll/svg.hpp"

namespace hll {

namespace {

std::string hex16(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Seeded points inside occupied mask cells with inf-convolution-repaired
// values: a genuine c-Hoelder-alpha witness tied to the mask.
GridFunction seeded_witness(const GridSet& mask, int grid_level, double alpha, double c,
                            std::uint64_t seed, int min_size, int max_size) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int size = min_size + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                     max_size - min_size + 1));
    const double cell = std::exp2(-mask.level());
    std::vector<Vec> points;
    Eigen::VectorXd raw(size);
    while (static_cast<int>(points.size()) < size) {
        Vec x(mask.dim());
        CellIndex ci;
        ci.p = mask.dim();
        for (int i = 0; i < mask.dim(); ++i) {
            const double u = unit(rng);
            ci.coords[i] = std::min<std::uint32_t>(mask.cells_per_axis() - 1,
                                                   static_cast<std::uint32_t>(u * mask.cells_per_axis()));
            x[i] = (ci.coords[i] + unit(rng)) * cell;
        }
        if (!mask.test(ci)) continue;
        raw[static_cast<Eigen::Index>(points.size())] = unit(rng) - 0.5;
        points.push_back(x);
    }
    const HolderSample sample = HolderSample::repair(std::move(points), raw, alpha, c);
    return mcshane_extend_to_grid(sample, mask.dim(), grid_level);
}

double seeded_pair_quotient(const GridFunction& f, const std::vector<std::uint64_t>& verts,
                            double alpha, std::uint64_t pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double q = 0.0;
    const std::uint64_t n = verts.size();
    for (std::uint64_t i = 0; i < pairs; ++i) {
        const std::uint64_t a = rng() % n;
        const std::uint64_t b = rng() % n;
        if (a == b) continue;
        const Vec xa = f.vertex_position(verts[a]);
        const Vec xb = f.vertex_position(verts[b]);
        const double d = dist_alpha(xa, xb, alpha);
        if (d > 0.0) q = std::max(q, std::abs(f[verts[a]] - f[verts[b]]) / d);
    }
    return q;
}

}  // namespace

bool ExperimentReport::all_passed() const {
    for (const auto& [key, value] : verdicts.items()) {
        (void)key;
        if (value.is_boolean() && !value.get<bool>()) return false;
    }
    return true;
}

Json ExperimentReport::to_json(bool with_timestamp) const {
    Json j;
    j["name"] = name;
    j["parameters"] = parameters;
    j["measurements"] = measurements;
    j["verdicts"] = verdicts;
    Json art = Json::array();
    for (const auto& [file, bytes] : artifacts) {
        (void)bytes;
        art.push_back(file);
    }
    j["artifacts"] = art;
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return j;
}

std::string write_report(const ExperimentReport& report, const std::string& base) {
    const std::string dir =
        base + "/" + report.name + "-" + hex16(fnv1a64(report.parameters.dump()));
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report.to_json(true).dump(2) + "\n");
    for (const auto& [file, bytes] : report.artifacts) write_text(dir + "/" + file, bytes);
    return dir;
}

ExperimentReport sponge_theorem(double alpha, int N, int level_count) {
    if (N < 9) fail("resolution-too-low", "sponge audit needs N >= 9 to resolve the G_2 gaps");
    ExperimentReport rep;
    rep.name = "sponge";

    const std::vector<double> taus = {0.0, 0.05, 0.1};
    // the finest pair of scales resolves the G_2 gap columns; coarse
    // scales below N-6 only add finite-size bias to the per-level fits
    const std::vector<int> scales = scale_range(std::max(4, N - 6), N - 2);
    const double p_m = 1.0;  // min |d_y f_tau| over the family
    const int k = minimal_k(alpha, p_m);
    const double p_mk = p_m * std::exp2(-static_cast<double>(k) * k);
    const double dstar_lo = 0.9, dstar_hi = 1.0;
    const double fubini_min = 0.2;

    rep.parameters["alpha"] = alpha;
    rep.parameters["N"] = N;
    rep.parameters["level_count"] = level_count;
    rep.parameters["taus"] = taus;
    rep.parameters["scales"] = scales;
    rep.parameters["p_m"] = p_m;
    rep.parameters["dstar_range"] = {dstar_lo, dstar_hi};
    rep.parameters["fubini_area_min"] = fubini_min;
    rep.parameters["image_measure_factor"] = 0.9;
    rep.parameters["minimal_k"] = k;
    rep.parameters["column_samples"] = 8;

    const SpongeSpec spec = sponge_spec_for(N, alpha);
    rep.parameters["sponge_k_max"] = spec.k_max;
    const GridSet mask = rasterize_sponge(spec, N);

    const DimEstimate mask_dim = box_dimension(mask, scales.front(), scales.back());
    rep.measurements["mask_dim_slope"] = mask_dim.slope;
    rep.measurements["gap_tail_sum_k"] = gap_tail_sum(k, alpha);
    rep.artifacts.emplace_back("mask_boxdim.svg", render_plot(mask_dim));

    // the paper's density square: a level window I_j' of width 2 * 2^-k^2
    // whose F0 share stays above 0.9 p_mk; scan j' and record the pick
    const int oracle_k_max = 4;
    rep.parameters["measure_oracle_k_max"] = oracle_k_max;
    int chosen_j = -1;
    double window_measure = 0.0;
    const double spacing_k = std::exp2(-static_cast<double>(k) * k);
    for (int j = 1; j < (1 << (k * k - 1)); ++j) {
        const double y0 = (j - 1) * spacing_k;
        const double y1 = (j + 1) * spacing_k;
        const double m = f0_measure_in(y0, y1, oracle_k_max) - f0_removed_tail(oracle_k_max + 1);
        if (m >= 0.9 * p_mk) {
            chosen_j = j;
            window_measure = m;
            break;
        }
    }
    rep.parameters["window_j"] = chosen_j;
    rep.measurements["window_measure"] = window_measure;
    rep.verdicts["window_found"] = chosen_j > 0;

    bool all_dstar = true, all_fubini = true, all_columns = true;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
        const double tau = taus[ti];
        GridFunction f = GridFunction::from_function(
            2, N, alpha, 1.0, [tau](const Vec& x) { return x[1] + tau * x[0]; });

        // column image-measure bound: f(x, .) translates [y0,y1] cap F0,
        // so the image measure equals the window measure exactly
        const double image_measure = window_measure;
        const bool column_ok = image_measure >= 0.9 * p_mk;
        all_columns = all_columns && column_ok;

        const double area = fubini_area(f, mask, N);
        const bool fubini_ok = area >= fubini_min;
        all_fubini = all_fubini && fubini_ok;

        const LevelProfile profile = level_sweep(f, mask, level_count, scales);
        const double dstar = dstar_estimate(profile);
        const bool dstar_ok = dstar >= dstar_lo && dstar <= dstar_hi;
        all_dstar = all_dstar && dstar_ok;

        const std::string suffix = "_tau" + std::to_string(ti);
        rep.measurements["image_measure" + suffix] = image_measure;
        rep.measurements["fubini_area" + suffix] = area;
        rep.measurements["dstar" + suffix] = dstar;
        rep.measurements["nonempty_levels" + suffix] =
            static_cast<std::uint64_t>(profile.nonempty_count());
        rep.verdicts["column_bound" + suffix] = column_ok;
        rep.verdicts["fubini_positive" + suffix] = fubini_ok;
        rep.verdicts["dstar_in_range" + suffix] = dstar_ok;

        rep.artifacts.emplace_back("profile_tau" + std::to_string(ti) + ".csv",
                                   profile_csv_string(profile));
        rep.artifacts.emplace_back("profile_tau" + std::to_string(ti) + ".svg",
                                   render_plot(profile));
    }
    rep.verdicts["columns_all"] = all_columns;
    rep.verdicts["fubini_all"] = all_fubini;
    rep.verdicts["dstar_all"] = all_dstar;
    // the Fubini lemma's logic: a positive-area graph projection is
    // necessary for dstar >= 1, so the dstar verdict implies the area one
    rep.verdicts["dstar_implies_fubini"] = !all_dstar || all_fubini;
    return rep;
}

ExperimentReport upper_bound_audit(const std::string& mask_name, const GridSet& mask,
                                   const std::vector<GridFunction>& family,
                                   const std::vector<int>& scales, int level_count) {
    if (family.empty()) fail("invalid-argument", "empty function family");
    ExperimentReport rep;
    rep.name = "upper-bound-" + mask_name;
    rep.parameters["mask"] = mask_name;
    rep.parameters["mask_N"] = mask.level();
    rep.parameters["scales"] = scales;
    rep.parameters["level_count"] = level_count;
    rep.parameters["tolerance"] = 0.1;
    rep.parameters["family_size"] = family.size();

    if (cell_count(mask) == 0) {
        rep.measurements["mask_dim_slope"] = 0.0;
        rep.verdicts["bound_holds"] = true;  // vacuous
        return rep;
    }

    const DimEstimate mask_dim = box_dimension(mask, scales.front(), scales.back());
    const double bound = std::max(0.0, mask_dim.slope - 1.0) + 0.1;
    rep.measurements["mask_dim_slope"] = mask_dim.slope;
    rep.measurements["bound"] = bound;
    rep.artifacts.emplace_back("mask_boxdim.svg", render_plot(mask_dim));

    bool all_ok = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const LevelProfile profile = level_sweep(family[i], mask, level_count, scales);
        const double dstar = dstar_estimate(profile);
        const bool ok = dstar <= bound;
        all_ok = all_ok && ok;
        rep.measurements["dstar_" + std::to_string(i)] = dstar;
        rep.verdicts["witness_" + std::to_string(i)] = ok;
    }
    rep.verdicts["bound_holds"] = all_ok;
    return rep;
}

ExperimentReport upper_bound_audit_standard(int N, std::uint64_t seed) {
    ExperimentReport rep;
    rep.name = "upper-bound";
    const std::vector<int> scales = scale_range(std::max(4, N - 6), N);
    const std::vector<double> alphas = {0.5, 0.8, 1.0};
    const int witnesses = 8;
    const int level_count = 64;
    const int size_lo = 30, size_hi = 60;
    rep.parameters["N"] = N;
    rep.parameters["seed"] = seed;
    rep.parameters["witnesses_per_mask"] = witnesses;
    rep.parameters["witness_alphas"] = alphas;
    rep.parameters["scales"] = scales;
    rep.parameters["level_count"] = level_count;
    rep.parameters["tolerance"] = 0.1;
    rep.parameters["witness_sizes"] = {size_lo, size_hi};
    rep.parameters["resolve_floor"] = kResolveFloor;

    const std::vector<std::pair<std::string, GridSet>> masks = [&] {
        std::vector<std::pair<std::string, GridSet>> m;
        GridSet square(2, N);
        for (std::uint64_t i = 0; i < square.total_cells(); ++i) square.set(i);
        m.emplace_back("square", std::move(square));
        m.emplace_back("sierpinski", ifs_rasterize(sierpinski_right_unit(), N, N));
        m.emplace_back("sponge", rasterize_sponge(sponge_spec_for(N, 1.0), N));
        return m;
    }();

    bool all_ok = true;
    std::uint64_t witness_id = 0;
    for (const auto& [mask_name, mask] : masks) {
        std::vector<GridFunction> family;
        for (int w = 0; w < witnesses; ++w, ++witness_id) {
            const double alpha = alphas[static_cast<std::size_t>(w) % alphas.size()];
            family.push_back(seeded_witness(mask, N, alpha, 1.0, seed * 1000003ull + witness_id,
                                            size_lo, size_hi));
        }
        ExperimentReport sub = upper_bound_audit(mask_name, mask, family, scales, level_count);
        for (const auto& [key, value] : sub.measurements.items())
            rep.measurements[mask_name + "." + key] = value;
        for (const auto& [key, value] : sub.verdicts.items())
            rep.verdicts[mask_name + "." + key] = value;
        for (auto& art : sub.artifacts)
            rep.artifacts.emplace_back(mask_name + "_" + art.first, std::move(art.second));
        all_ok = all_ok && sub.all_passed();
    }
    rep.verdicts["bound_holds_all"] = all_ok;
    return rep;
}

ExperimentReport slicing_audit(const std::string& mask_name, const GridSet& mask,
                               const std::vector<int>& axes,
                               const std::vector<double>& eps_list) {
    if (mask.dim() < 2) fail("invalid-argument", "slicing audit needs p >= 2");
    ExperimentReport rep;
    rep.name = "slicing-" + mask_name;
    rep.parameters["mask"] = mask_name;
    rep.parameters["mask_N"] = mask.level();
    rep.parameters["axes"] = axes;
    rep.parameters["eps"] = eps_list;

    const std::vector<int> scales = scale_range(4, mask.level());
    const DimEstimate mask_dim = box_dimension(mask, scales.front(), scales.back());
    const double s = std::max(1.0, mask_dim.slope);
    rep.parameters["s"] = s;
    rep.measurements["mask_dim_slope"] = mask_dim.slope;

    bool all_ok = true;
    for (int finest = 0; finest < 2; ++finest) {
        const int level = mask.level() - finest;
        const GridSet at_level = finest == 0 ? mask : coarsen(mask, finest);
        for (int axis : axes)
            for (double eps : eps_list) {
                const SliceAudit audit = slice_audit(at_level, axis, eps, s);
                std::ostringstream key;
                key << "N" << level << "_axis" << axis << "_eps" << eps;
                rep.measurements["fraction_" + key.str()] = audit.fraction_violating;
                rep.measurements["bound_" + key.str()] = audit.bound;
                const bool ok = audit.fraction_violating <= audit.bound;
                rep.verdicts["decay_" + key.str()] = ok;
                all_ok = all_ok && ok;
            }
    }
    rep.verdicts["decay_all"] = all_ok;
    return rep;
}

ExperimentReport slicing_audit_standard() {
    ExperimentReport rep;
    rep.name = "slicing";
    rep.parameters["masks"] = {"sponge-N10", "sponge-N12"};
    rep.parameters["eps"] = {0.25};
    rep.parameters["axes"] = {0, 1};

    bool all_ok = true;
    for (int N : {10, 12}) {
        const GridSet mask = rasterize_sponge(sponge_spec_for(N, 1.0), N);
        ExperimentReport sub = slicing_audit("sponge-N" + std::to_string(N), mask, {0, 1}, {0.25});
        for (const auto& [key, value] : sub.measurements.items())
            rep.measurements["N" + std::to_string(N) + "." + key] = value;
        for (const auto& [key, value] : sub.verdicts.items())
            rep.verdicts["N" + std::to_string(N) + "." + key] = value;
        all_ok = all_ok && sub.all_passed();
    }
    rep.verdicts["decay_all"] = all_ok;
    return rep;
}

ExperimentReport monotonicity_sweep(const std::string& mask_name, const GridSet& mask,
                                    const std::vector<double>& alphas, std::uint64_t seed) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (alphas[i] <= alphas[i - 1]) fail("invalid-argument", "alpha list must increase");
    ExperimentReport rep;
    rep.name = "monotone-" + mask_name;
    rep.parameters["mask"] = mask_name;
    rep.parameters["mask_N"] = mask.level();
    rep.parameters["alphas"] = alphas;
    rep.parameters["seed"] = seed;
    rep.parameters["witnesses"] = 4;
    rep.parameters["tolerance"] = 0.1;
    rep.parameters["level_count"] = 128;
    rep.parameters["proxy_note"] =
        "witness-family proxy via rescaled seeded extensions; not the generic quantity";

    const std::vector<int> scales = scale_range(4, mask.level() - 1);
    const int witnesses = 4;

    // fixed seeded sample geometry shared by every alpha; per alpha the
    // raw values are rescaled to meet the c = 1 Hoelder bound exactly
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::vector<Vec>> all_points(witnesses);
    std::vector<Eigen::VectorXd> all_raw(witnesses);
    const double cell = std::exp2(-mask.level());
    for (int w = 0; w < witnesses; ++w) {
        const int size = 12 + static_cast<int>(rng() % 20);
        all_raw[w].resize(size);
        while (static_cast<int>(all_points[w].size()) < size) {
            Vec x(mask.dim());
            CellIndex ci;
            ci.p = mask.dim();
            for (int i = 0; i < mask.dim(); ++i) {
                ci.coords[i] = std::min<std::uint32_t>(
                    mask.cells_per_axis() - 1,
                    static_cast<std::uint32_t>(unit(rng) * mask.cells_per_axis()));
                x[i] = (ci.coords[i] + unit(rng)) * cell;
            }
            if (!mask.test(ci)) continue;
            all_raw[w][static_cast<Eigen::Index>(all_points[w].size())] = unit(rng) - 0.5;
            all_points[w].push_back(x);
        }
    }

    std::vector<double> max_dstar;
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        const double alpha = alphas[ai];
        double best = 0.0;
        for (int w = 0; w < witnesses; ++w) {
            // rescale raw values below the c = 1 bound (the paper's
            // (1/M) f rescaling)
            double quotient = 0.0;
            for (std::size_t i = 0; i < all_points[w].size(); ++i)
                for (std::size_t j = i + 1; j < all_points[w].size(); ++j) {
                    const double d = dist_alpha(all_points[w][i], all_points[w][j], alpha);
                    if (d > 0.0)
                        quotient = std::max(
                            quotient, std::abs(all_raw[w][static_cast<Eigen::Index>(i)] -
                                               all_raw[w][static_cast<Eigen::Index>(j)]) /
                                          d);
                }
            const double scale = quotient > 1.0 ? (1.0 - 1e-12) / quotient : 1.0;
            HolderSample sample(all_points[w], all_raw[w] * scale, alpha, 1.0);
            const GridFunction f = mcshane_extend_to_grid(sample, mask.dim(), mask.level());
            const LevelProfile profile = level_sweep(f, mask, 128, scales);
            const double dstar = dstar_estimate(profile);
            rep.measurements["dstar_a" + std::to_string(ai) + "_w" + std::to_string(w)] = dstar;
            best = std::max(best, dstar);
        }
        rep.measurements["max_dstar_a" + std::to_string(ai)] = best;
        max_dstar.push_back(best);
    }

    bool nondecreasing = true;
    for (std::size_t i = 1; i < max_dstar.size(); ++i)
        if (max_dstar[i] < max_dstar[i - 1] - 0.1) nondecreasing = false;
    rep.verdicts["max_dstar_nondecreasing"] = nondecreasing;
    return rep;
}

ExperimentReport selfsimilar_copy_experiment(int n, int k, int N, double alpha) {
    ExperimentReport rep;
    rep.name = "copy";
    rep.parameters["n"] = n;
    rep.parameters["k"] = k;
    rep.parameters["N"] = N;
    rep.parameters["alpha"] = alpha;
    rep.parameters["pair_samples"] = 100000;
    rep.parameters["quotient_tolerance"] = 1e-6;
    rep.parameters["kappa_delta"] = 0.1;

    const IFS ifs = sierpinski_preset();
    const GridSet mask = ifs_rasterize(ifs, N, N);

    // f_n: affine coordinate sum scaled into c_n < 1 territory; analytic
    // Lipschitz and Hoelder bounds over the preset's diameter
    const double beta = 0.5;
    const double diam = std::sqrt(2.0) / 2.0;
    const double lipschitz = beta * std::sqrt(2.0);
    const double c_n = lipschitz * std::pow(diam, 1.0 - alpha);
    const SimplicialInterpolant f_n = build_interpolant(
        [beta](const Vec& x) { return beta * (x[0] + x[1]); }, 2, 1.0 / 8.0);

    // f_0: scaled height, zero at the origin, constant <= 1/2 over the
    // unit cube (where the pulled-back evaluations live)
    const double gamma = 0.4;
    GridFunction f_0 = GridFunction::from_function(
        2, N, alpha, 0.5, [gamma](const Vec& x) { return gamma * x[1]; });

    rep.parameters["f_n"] = "0.5*(x+y) Kuhn interpolant, delta 1/8";
    rep.parameters["f_0"] = "0.4*y";
    rep.parameters["c_n"] = c_n;
    rep.parameters["lipschitz"] = lipschitz;

    RescaleInputs in;
    in.f_n = &f_n;
    in.c_n = c_n;
    in.lipschitz = lipschitz;
    in.f_0 = &f_0;
    in.ifs = &ifs;
    in.mask = &mask;
    in.alpha = alpha;
    in.n = n;
    in.k = k;
    const RescaledCopy copy = rescaled_copy(in);

    rep.measurements["L"] = copy.L;
    rep.measurements["placements"] = static_cast<std::uint64_t>(copy.placements.size());
    rep.measurements["range_lo"] = copy.range_lo;
    rep.measurements["range_hi"] = copy.range_hi;
    rep.verdicts["placement_count"] = static_cast<int>(copy.placements.size()) == copy.L - 1;

    GridFunction fn_grid = GridFunction::from_function(
        2, N, alpha, c_n, [&f_n](const Vec& x) { return f_n.evaluate(x); });

    // Claim 1 on the copy region (its domain in the source construction)
    double claim1_sup = 0.0;
    for (std::uint64_t v : copy.sample_vertices)
        claim1_sup = std::max(claim1_sup, std::abs(copy.f_star[v] - fn_grid[v]));
    rep.measurements["claim1_sup_copies"] = claim1_sup;
    rep.verdicts["claim1"] = claim1_sup < copy.bound;

    // global clamp guarantee, reported alongside
    double global_sup = 0.0;
    for (std::uint64_t v = 0; v < copy.f_star.vertex_count(); ++v)
        global_sup = std::max(global_sup, std::abs(copy.f_star[v] - fn_grid[v]));
    rep.measurements["clamp_sup_global"] = global_sup;
    rep.verdicts["clamp_bound"] = global_sup <= copy.bound + 1e-15;

    // Claim 2 over seeded mask-vertex pairs
    const std::vector<std::uint64_t> verts = mask_vertices(copy.f_star, mask);
    const double quotient =
        seeded_pair_quotient(copy.f_star, verts, alpha, 100000, 0x1234abcdull);
    rep.measurements["claim2_quotient"] = quotient;
    rep.measurements["c_star"] = copy.c_star;
    rep.verdicts["claim2"] = quotient <= copy.c_star + 1e-6;

    // anchor equality, exact
    double anchor_dev = 0.0;
    for (const Placement& pl : copy.placements) {
        std::array<std::uint32_t, kMaxDim> av{};
        for (int i = 0; i < 2; ++i)
            av[i] = static_cast<std::uint32_t>(std::lround(pl.anchor[i] * std::exp2(N)));
        const std::uint64_t vid = copy.f_star.vertex_index(av);
        anchor_dev = std::max(anchor_dev, std::abs(copy.f_star[vid] - fn_grid[vid]));
    }
    rep.measurements["anchor_deviation"] = anchor_dev;
    rep.verdicts["anchors_exact"] = anchor_dev == 0.0;

    // disjointness and the size bracket
    bool disjoint = true;
    for (std::size_t a = 0; a < copy.placements.size(); ++a)
        for (std::size_t b = a + 1; b < copy.placements.size(); ++b) {
            const AffineMap& ma = copy.placements[a].map;
            const AffineMap& mb = copy.placements[b].map;
            bool separated = false;
            for (int i = 0; i < 2; ++i)
                if (ma.offset[i] + ma.scale < mb.offset[i] ||
                    mb.offset[i] + mb.scale < ma.offset[i])
                    separated = true;
            disjoint = disjoint && separated;
        }
    rep.verdicts["placements_disjoint"] = disjoint;

    const double spacing = (copy.range_hi - copy.range_lo) / copy.L;
    const double size_target = std::pow(spacing / 3.0, 1.0 / alpha);
    bool bracket = true;
    double q_alpha_min = 1.0;
    for (const Placement& pl : copy.placements) {
        bracket = bracket && pl.copy_diameter <= size_target &&
                  pl.copy_diameter > ifs.q_min() * size_target &&
                  spacing / (3.0 * copy.K) > pl.copy_diameter;
        q_alpha_min = std::min(q_alpha_min, std::pow(pl.ratio, alpha));
    }
    rep.parameters["size_target"] = size_target;
    rep.verdicts["size_bracket"] = bracket;

    // kappa over the placed-copy subranges plus the uniform lower bound
    // of the per-interval measure (kappa_0 factored out)
    double min_copy_range = std::numeric_limits<double>::infinity();
    for (const Placement& pl : copy.placements) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::uint64_t v : copy.sample_vertices) {
            const Vec x = copy.f_star.vertex_position(v);
            bool inside = true;
            for (int i = 0; i < 2; ++i)
                inside = inside && x[i] >= pl.map.offset[i] &&
                         x[i] <= pl.map.offset[i] + pl.map.scale;
            if (!inside) continue;
            lo = std::min(lo, copy.f_star[v]);
            hi = std::max(hi, copy.f_star[v]);
        }
        if (hi >= lo) min_copy_range = std::min(min_copy_range, hi - lo);
    }
    const auto [f0lo, f0hi] = value_range(f_0, mask);
    const double ell0 = 2.0 * (f0hi - f0lo);  // f_0* = 2 f_0
    rep.measurements["min_copy_range"] = min_copy_range;
    rep.measurements["per_interval_floor"] =
        0.5 * (spacing / 3.0) * std::pow(ifs.q_min(), alpha) * ell0;

    const std::vector<int> scales = scale_range(4, N - 1);
    const LevelProfile profile = level_sweep(copy.f_star, mask, 128, scales);
    const double dstar = dstar_estimate(profile);
    rep.measurements["dstar_fstar"] = dstar;
    rep.measurements["kappa_fstar"] = kappa(profile, dstar, 0.1);
    rep.artifacts.emplace_back("fstar_profile.svg", render_plot(profile));
    return rep;
}

}  // namespace hll
