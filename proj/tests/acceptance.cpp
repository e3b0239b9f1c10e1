// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Each tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "hll/dimension.hpp"
#include "hll/experiments.hpp"
#include "hll/fractal.hpp"
#include "hll/ifs.hpp"
#include "hll/level.hpp"
#include "hll/mollify.hpp"
#include "hll/simplicial.hpp"

using namespace hll;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(int id, std::string name)
        : id_(id), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

    void require(bool ok, const std::string& detail) {
        if (!ok) {
            failed_details_.push_back(detail);
        }
    }

    void finish(double time_limit_s = 0.0) {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (time_limit_s > 0.0 && elapsed > time_limit_s)
            failed_details_.push_back("runtime " + std::to_string(elapsed) + "s over " +
                                      std::to_string(time_limit_s) + "s");
        if (failed_details_.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1fs)\n", id_, name_.c_str(), elapsed);
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %2d: %s (%.1fs)\n", id_, name_.c_str(), elapsed);
            for (const std::string& d : failed_details_)
                std::printf("       - %s\n", d.c_str());
        }
    }

private:
    int id_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> failed_details_;
};

GridSet full_square(int N) {
    GridSet g(2, N);
    for (std::uint64_t i = 0; i < g.total_cells(); ++i) g.set(i);
    return g;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void criterion_1_box_dimension_calibration() {
    Criterion c(1, "box-dimension calibration");
    const GridSet gasket = ifs_rasterize(sierpinski_right_unit(), 10, 10);
    const double slope3 = box_dimension(gasket, 4, 10).slope;
    c.require(std::abs(slope3 - std::log2(3.0)) <= 0.05,
              "gasket slope " + num(slope3) + " vs log2(3) beyond 0.05");
    const GridSet square = full_square(10);
    const double slope2 = box_dimension(square, 4, 10).slope;
    c.require(std::abs(slope2 - 2.0) <= 1e-9, "square slope " + num(slope2) + " != 2 within 1e-9");
    c.finish(10.0);
}

void criterion_2_sponge_theorem() {
    Criterion c(2, "sponge theorem audit (alpha=1, N=12, 256 levels)");
    const ExperimentReport rep = sponge_theorem(1.0, 12, 256);
    c.require(rep.parameters["minimal_k"].get<int>() == 4, "minimal_k(1,1) != 4");
    for (int t = 0; t < 3; ++t) {
        const std::string suffix = "_tau" + std::to_string(t);
        const double dstar = rep.measurements["dstar" + suffix].get<double>();
        c.require(dstar >= 0.9 && dstar <= 1.0,
                  "dstar" + suffix + " = " + num(dstar) + " outside [0.9, 1.0]");
        const double area = rep.measurements["fubini_area" + suffix].get<double>();
        c.require(area >= 0.2, "fubini_area" + suffix + " = " + num(area) + " below 0.2");
    }
    c.require(rep.all_passed(), "harness verdicts failed");
    c.finish(60.0);
}

void criterion_3_upper_bound_audit() {
    Criterion c(3, "upper-bound audit on square, gasket, sponge");
    const ExperimentReport rep = upper_bound_audit_standard(11, 7);
    for (const char* mask : {"square", "sierpinski", "sponge"}) {
        const double dim = rep.measurements[std::string(mask) + ".mask_dim_slope"].get<double>();
        const double bound = std::max(0.0, dim - 1.0) + 0.1;
        for (int w = 0; w < 8; ++w) {
            const double dstar =
                rep.measurements[std::string(mask) + ".dstar_" + std::to_string(w)]
                    .get<double>();
            c.require(dstar <= bound, std::string(mask) + " witness " + std::to_string(w) +
                                          ": dstar " + num(dstar) + " > " + num(bound));
        }
    }
    c.finish(120.0);
}

void criterion_4_slicing_decay() {
    Criterion c(4, "slicing decay on the sponge, exhaustive");
    for (int N : {10, 12}) {
        const GridSet mask = rasterize_sponge(sponge_spec_for(N, 1.0), N);
        const double s = std::max(1.0, box_dimension(mask, 4, N).slope);
        for (int axis : {0, 1}) {
            const SliceAudit audit = slice_audit(mask, axis, 0.25, s);
            c.require(audit.fraction_violating <= audit.bound,
                      "N=" + std::to_string(N) + " axis " + std::to_string(axis) +
                          ": fraction " + num(audit.fraction_violating) + " > bound " +
                          num(audit.bound));
        }
    }
    c.finish();
}

void criterion_5_extension_contract() {
    Criterion c(5, "inf-convolution extension contract, 100 seeded samples");
    std::mt19937_64 rng(20240501);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double alphas[4] = {0.3, 0.5, 0.8, 1.0};
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = alphas[trial % 4];
        const int p = (trial % 2) ? 2 : 1;
        const int size = 2 + static_cast<int>(rng() % 49);
        std::vector<Vec> pts;
        Eigen::VectorXd raw(size);
        for (int i = 0; i < size; ++i) {
            Vec x(p);
            for (int d = 0; d < p; ++d) x[d] = unit(rng);
            pts.push_back(x);
            raw[i] = unit(rng) - 0.5;
        }
        const HolderSample s = HolderSample::repair(std::move(pts), raw, alpha, 1.0);

        for (std::size_t i = 0; i < s.size(); ++i) {
            if (mcshane_extend(s, s.points()[i]) != s.values()[static_cast<Eigen::Index>(i)]) {
                c.require(false, "trial " + std::to_string(trial) + ": sample value mismatch");
                break;
            }
        }

        // ~1e5 pairs: extension values at 450 query points, exhaustive
        const int queries = 450;
        std::vector<Vec> q;
        std::vector<double> g;
        for (int i = 0; i < queries; ++i) {
            Vec x(p);
            for (int d = 0; d < p; ++d) x[d] = unit(rng) * 1.4 - 0.2;  // beyond the cube too
            q.push_back(x);
            g.push_back(mcshane_extend(s, x));
        }
        double worst = 0.0;
        for (int i = 0; i < queries; ++i)
            for (int j = i + 1; j < queries; ++j) {
                const double d = dist_alpha(q[static_cast<std::size_t>(i)],
                                            q[static_cast<std::size_t>(j)], alpha);
                if (d > 0.0)
                    worst = std::max(worst, std::abs(g[static_cast<std::size_t>(i)] -
                                                     g[static_cast<std::size_t>(j)]) -
                                                d);
            }
        if (worst > 1e-9)
            c.require(false,
                      "trial " + std::to_string(trial) + ": quotient excess " + num(worst));
    }
    c.finish();
}

void criterion_6_mollifier_contract() {
    Criterion c(6, "mollifier contract");
    std::mt19937_64 rng(606060);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& [p, N, r] : {std::tuple{1, 10, 0.05}, {2, 6, 0.1}}) {
        const int size = 12;
        std::vector<Vec> pts;
        Eigen::VectorXd raw(size);
        for (int i = 0; i < size; ++i) {
            Vec x(p);
            for (int d = 0; d < p; ++d) x[d] = unit(rng);
            pts.push_back(x);
            raw[i] = unit(rng) - 0.5;
        }
        const double alpha = 0.5;
        const HolderSample s = HolderSample::repair(std::move(pts), raw, alpha, 1.0);
        const GridFunction f = mcshane_extend_to_grid(s, p, N);
        const Mollifier m(r, p, N);
        const GridFunction out = mollify(f, m);

        const double before = holder_constant(f, alpha, 1u << 21).value;
        const double after = holder_constant(out, alpha, 1u << 21).value;
        c.require(after <= before + 1e-6, "p=" + std::to_string(p) + ": constant grew " +
                                              num(after) + " > " + num(before));

        GridFunction constf = f;
        constf.values().setConstant(0.37);
        const GridFunction mc = mollify(constf, m);
        c.require((mc.values() - 0.37).abs().maxCoeff() <= 1e-8,
                  "constant function moved under mollification");

        double sup = 0.0;
        for (std::uint64_t v = 0; v < f.vertex_count(); ++v) {
            const Vec x = f.vertex_position(v);
            bool interior = true;
            for (int d = 0; d < p; ++d)
                interior = interior && x[d] >= r && x[d] <= 1.0 - r;
            if (interior) sup = std::max(sup, std::abs(out[v] - f[v]));
        }
        c.require(sup <= 1.0 * pow_abs(r, alpha) + 1e-12,
                  "p=" + std::to_string(p) + ": sup distance " + num(sup) + " over c r^alpha");
    }
    c.finish();
}

void criterion_7_simplicial_bound() {
    Criterion c(7, "simplicial interpolant bound, 20 seeded Lipschitz sources");
    std::mt19937_64 rng(70707);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a1 = unit(rng) * 2.0 - 1.0;
        const double a2 = unit(rng) * 2.0 - 1.0;
        const double w = 1.0 + 5.0 * unit(rng);
        const double phase = unit(rng) * 6.28;
        // |grad| <= |a1| w + |a2|, a valid Lipschitz constant
        const double K = std::abs(a1) * w + std::abs(a2) + 1e-9;
        const auto fn = [=](const Vec& x) {
            return a1 * std::sin(w * x[0] + phase) + a2 * x[1];
        };
        const double delta = (trial % 2) ? 1.0 / 16.0 : 1.0 / 8.0;
        const SimplicialInterpolant interp = build_interpolant(fn, 2, delta);
        const double bound = 3.0 * K * kuhn_aspect(2);

        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            Vec x(2), y(2);
            x << unit(rng), unit(rng);
            y << unit(rng), unit(rng);
            const double d = (x - y).norm();
            if (d == 0.0) continue;
            worst = std::max(worst,
                             std::abs(interp.evaluate(x) - interp.evaluate(y)) / d);
        }
        c.require(worst <= bound + 1e-9, "trial " + std::to_string(trial) + ": quotient " +
                                             num(worst) + " over M = " + num(bound));
    }

    // M invariance under similarity transforms, 1e-10 relative
    SimplexVertices base(2, 3);
    base << 0.1, 0.9, 0.4, 0.2, 0.1, 0.8;
    const double m0 = simplicial_lipschitz_bound(base, 1.7);
    for (int trial = 0; trial < 100; ++trial) {
        const double theta = unit(rng) * 6.28318;
        const double scale = 0.25 + 4.0 * unit(rng);
        Eigen::Matrix2d rot;
        rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        SimplexVertices moved(2, 3);
        for (int j = 0; j < 3; ++j)
            moved.col(j) = scale * (rot * base.col(j)) +
                           Eigen::Vector2d(unit(rng) * 2.0, unit(rng) * 2.0);
        const double m1 = simplicial_lipschitz_bound(moved, 1.7);
        if (std::abs(m1 - m0) > 1e-10 * m0) {
            c.require(false, "similarity transform moved M by " + num(std::abs(m1 - m0) / m0));
            break;
        }
    }
    c.finish();
}

void criterion_8_rescaled_copy() {
    Criterion c(8, "rescaled-copy claims on the gasket preset (n=k=1)");
    const ExperimentReport rep = selfsimilar_copy_experiment(1, 1, 10, 0.5);
    c.require(rep.verdicts["claim1"].get<bool>(),
              "claim 1: sup over copies " + num(rep.measurements["claim1_sup_copies"]) +
                  " not below 1/(n+k)");
    c.require(rep.verdicts["claim2"].get<bool>(),
              "claim 2: quotient " + num(rep.measurements["claim2_quotient"]) + " over (1+c)/2");
    c.require(rep.verdicts["anchors_exact"].get<bool>(), "anchors not exact");
    c.require(rep.verdicts["placements_disjoint"].get<bool>(), "placements overlap");
    c.require(rep.verdicts["size_bracket"].get<bool>(), "size bracket violated");
    c.require(rep.verdicts["placement_count"].get<bool>(), "placement count != L - 1");
    c.finish(120.0);
}

void criterion_9_oracle_equivalence() {
    Criterion c(9, "rasterize-then-coarsen equals direct coarse rasterization");
    const GridSet sponge_fine = rasterize_sponge(sponge_spec_for(10, 1.0), 10);
    const GridSet gasket_fine = ifs_rasterize(sierpinski_right_unit(), 10, 10);
    for (int N : {6, 8, 10}) {
        const GridSet sponge_direct = rasterize_sponge(sponge_spec_for(N, 1.0), N);
        const GridSet sponge_coarse =
            (N == 10) ? sponge_fine : coarsen(sponge_fine, 10 - N);
        c.require(sponge_coarse == sponge_direct,
                  "sponge mismatch at N=" + std::to_string(N));
        const GridSet gasket_direct = ifs_rasterize(sierpinski_right_unit(), N, N);
        const GridSet gasket_coarse =
            (N == 10) ? gasket_fine : coarsen(gasket_fine, 10 - N);
        c.require(gasket_coarse == gasket_direct,
                  "gasket mismatch at N=" + std::to_string(N));
    }
    c.finish();
}

void criterion_10_determinism() {
    Criterion c(10, "experiment reruns are byte-identical");
    const auto same = [&c](const ExperimentReport& a, const ExperimentReport& b,
                           const std::string& label) {
        c.require(a.to_json(false).dump(2) == b.to_json(false).dump(2),
                  label + ": report bytes differ (timestamp excluded)");
        c.require(a.artifacts.size() == b.artifacts.size(), label + ": artifact sets differ");
        for (std::size_t i = 0; i < std::min(a.artifacts.size(), b.artifacts.size()); ++i)
            c.require(a.artifacts[i].second == b.artifacts[i].second,
                      label + ": artifact " + a.artifacts[i].first + " differs");
    };
    same(sponge_theorem(1.0, 9, 32), sponge_theorem(1.0, 9, 32), "sponge");
    same(slicing_audit("sponge", rasterize_sponge(sponge_spec_for(8, 1.0), 8), {0, 1}, {0.25}),
         slicing_audit("sponge", rasterize_sponge(sponge_spec_for(8, 1.0), 8), {0, 1}, {0.25}),
         "slicing");
    {
        const GridSet square = full_square(7);
        std::vector<GridFunction> family;
        family.push_back(GridFunction::from_function(2, 7, 1.0, 1.0,
                                                     [](const Vec& x) { return x[1]; }));
        same(upper_bound_audit("square", square, family, scale_range(4, 7), 32),
             upper_bound_audit("square", square, family, scale_range(4, 7), 32),
             "upper-bound");
        same(monotonicity_sweep("square", square, {0.4, 0.8}, 5),
             monotonicity_sweep("square", square, {0.4, 0.8}, 5), "monotone");
    }
    same(selfsimilar_copy_experiment(1, 1, 9, 0.5), selfsimilar_copy_experiment(1, 1, 9, 0.5),
         "copy");
    c.finish();
}

}  // namespace

int main() {
    criterion_1_box_dimension_calibration();
    criterion_2_sponge_theorem();
    criterion_3_upper_bound_audit();
    criterion_4_slicing_decay();
    criterion_5_extension_contract();
    criterion_6_mollifier_contract();
    criterion_7_simplicial_bound();
    criterion_8_rescaled_copy();
    criterion_9_oracle_equivalence();
    criterion_10_determinism();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
