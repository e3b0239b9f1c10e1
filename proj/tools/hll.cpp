// hll - command line front end for the fractal level-set laboratory.
//
// Subcommands mirror the library modules: fractal generators, box
// dimension fits, Hoelder function constructions, level sweeps and the
// theorem-audit experiments. Exit codes: 0 success (all verdicts pass),
// 1 failed verdict, 2 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hll/experiments.hpp"
#include "hll/fractal.hpp"
#include "hll/ifs.hpp"
#include "hll/io.hpp"
#include "hll/mollify.hpp"
#include "hll/svg.hpp"

namespace {

struct ScaleRange {
    int lo = 4;
    int hi = 9;
};

ScaleRange parse_scales(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        hll::fail("invalid-argument", "scales must look like a:b, got " + text);
    ScaleRange r;
    r.lo = std::stoi(text.substr(0, colon));
    r.hi = std::stoi(text.substr(colon + 1));
    if (r.lo > r.hi) hll::fail("invalid-argument", "scales range is empty: " + text);
    return r;
}

hll::HolderSample read_samples_json(const std::string& path) {
    const hll::Json j = hll::Json::parse(hll::read_text(path));
    const double alpha = j.at("alpha").get<double>();
    const double c = j.at("c").get<double>();
    std::vector<hll::Vec> points;
    for (const auto& pt : j.at("points")) {
        hll::Vec x(static_cast<Eigen::Index>(pt.size()));
        for (std::size_t i = 0; i < pt.size(); ++i)
            x[static_cast<Eigen::Index>(i)] = pt[i].get<double>();
        points.push_back(std::move(x));
    }
    Eigen::VectorXd values(static_cast<Eigen::Index>(j.at("values").size()));
    for (std::size_t i = 0; i < j.at("values").size(); ++i)
        values[static_cast<Eigen::Index>(i)] = j.at("values")[i].get<double>();
    return hll::HolderSample(std::move(points), std::move(values), alpha, c);
}

int run_experiment(const hll::ExperimentReport& rep, const std::string& out_base) {
    const std::string dir = hll::write_report(rep, out_base);
    std::cout << "report: " << dir << "/report.json\n";
    for (const auto& [key, value] : rep.verdicts.items())
        std::cout << "  [" << (value.get<bool>() ? "pass" : "FAIL") << "] " << key << "\n";
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal level-set laboratory"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    if (const char* env = std::getenv("HLL_THREADS")) threads = std::strtoul(env, nullptr, 10);
    app.add_option("--threads", threads, "worker thread cap (env HLL_THREADS)");

    app.set_config("--config", "", "key=value config file; flags override")
        ->transform(CLI::FileOnDefaultPath(""));

    // ---- fractal ----
    auto* fractal = app.add_subcommand("fractal", "rasterize fractal sets");
    auto* sponge = fractal->add_subcommand("sponge", "the thick sponge F0 x F0");
    int sponge_n = 10;
    int sponge_kmax = 0;
    std::string sponge_out = "sponge.hlgrid";
    sponge->add_option("--n", sponge_n, "resolution level");
    sponge->add_option("--kmax", sponge_kmax, "gap generation cutoff (0 = exact for n)");
    sponge->add_option("--out", sponge_out, "output HLGRID01 path");

    auto* ifs_cmd = fractal->add_subcommand("ifs", "iterated function system attractor");
    std::string ifs_file;
    std::string ifs_preset;
    int ifs_depth = 8;
    int ifs_n = 8;
    std::string ifs_out = "ifs.hlgrid";
    ifs_cmd->add_option("--file", ifs_file, "ifs config file");
    ifs_cmd->add_option("--preset", ifs_preset, "sierpinski | sierpinski-unit | square");
    ifs_cmd->add_option("--depth", ifs_depth, "composition depth");
    ifs_cmd->add_option("--n", ifs_n, "resolution level");
    ifs_cmd->add_option("--out", ifs_out, "output HLGRID01 path");

    // ---- boxdim ----
    auto* boxdim = app.add_subcommand("boxdim", "box-counting dimension fit");
    std::string boxdim_in;
    std::string boxdim_scales = "4:9";
    std::string boxdim_json, boxdim_svg;
    boxdim->add_option("--in", boxdim_in, "HLGRID01 input")->required();
    boxdim->add_option("--scales", boxdim_scales, "inclusive range a:b");
    boxdim->add_option("--json", boxdim_json, "write the estimate as JSON");
    boxdim->add_option("--svg", boxdim_svg, "write the log-log plot");

    // ---- fn ----
    auto* fn = app.add_subcommand("fn", "Hoelder function constructions");
    auto* fn_extend = fn->add_subcommand("extend", "McShane extension of samples");
    std::string ext_samples, ext_out = "extended.hlfun";
    int ext_p = 2, ext_n = 8;
    fn_extend->add_option("--samples", ext_samples, "samples JSON file")->required();
    fn_extend->add_option("--p", ext_p, "ambient dimension");
    fn_extend->add_option("--n", ext_n, "grid resolution");
    fn_extend->add_option("--out", ext_out, "output HLFUN001 path");

    auto* fn_mollify = fn->add_subcommand("mollify", "convolve with the bump mollifier");
    std::string mol_in, mol_out = "mollified.hlfun";
    double mol_r = 0.05;
    fn_mollify->add_option("--in", mol_in, "HLFUN001 input")->required();
    fn_mollify->add_option("--r", mol_r, "kernel radius");
    fn_mollify->add_option("--out", mol_out, "output HLFUN001 path");

    auto* fn_interp = fn->add_subcommand("interp", "Kuhn simplicial interpolant");
    std::string interp_in, interp_out = "interpolant.json";
    double interp_delta = 1.0 / 16.0;
    fn_interp->add_option("--in", interp_in, "HLFUN001 input")->required();
    fn_interp->add_option("--delta", interp_delta, "subcube side (1/m)");
    fn_interp->add_option("--out", interp_out, "output JSON path");

    auto* fn_rescale = fn->add_subcommand("rescale", "the rescaled-copy construction");
    int rs_n = 1, rs_k = 1, rs_grid = 9;
    double rs_alpha = 0.5;
    std::string rs_out = "fstar.hlfun";
    fn_rescale->add_option("--n", rs_n, "construction index n");
    fn_rescale->add_option("--k", rs_k, "construction index k");
    fn_rescale->add_option("--grid", rs_grid, "grid resolution");
    fn_rescale->add_option("--alpha", rs_alpha, "Hoelder exponent (must be < 1)");
    fn_rescale->add_option("--out", rs_out, "output HLFUN001 path");

    // ---- level ----
    auto* level = app.add_subcommand("level", "level-set analysis");
    auto* sweep = level->add_subcommand("sweep", "per-level box dimensions");
    std::string sweep_fn, sweep_mask, sweep_out = "profile.csv", sweep_scales = "4:9";
    std::string sweep_svg;
    int sweep_levels = 256;
    sweep->add_option("--fn", sweep_fn, "HLFUN001 input")->required();
    sweep->add_option("--mask", sweep_mask, "HLGRID01 mask")->required();
    sweep->add_option("--levels", sweep_levels, "level count");
    sweep->add_option("--scales", sweep_scales, "inclusive range a:b");
    sweep->add_option("--out", sweep_out, "output CSV path");
    sweep->add_option("--svg", sweep_svg, "write the r-vs-slope step plot");

    // ---- exp ----
    auto* exp = app.add_subcommand("exp", "theorem-audit experiments");
    exp->fallthrough();
    std::string exp_out_base = "runs";
    exp->add_option("--out-dir", exp_out_base, "base directory for run artifacts");

    auto* exp_sponge = exp->add_subcommand("sponge", "sponge theorem audit");
    double es_alpha = 1.0;
    int es_n = 12, es_levels = 256;
    exp_sponge->add_option("--alpha", es_alpha, "Hoelder exponent");
    exp_sponge->add_option("--n", es_n, "resolution level");
    exp_sponge->add_option("--levels", es_levels, "level count");

    auto* exp_upper = exp->add_subcommand("upper-bound", "upper bound audit on three masks");
    int eu_n = 11;
    std::uint64_t eu_seed = 7;
    exp_upper->add_option("--n", eu_n, "resolution level");
    exp_upper->add_option("--seed", eu_seed, "witness seed");

    auto* exp_slicing = exp->add_subcommand("slicing", "slice decay audit on the sponge");

    auto* exp_mono = exp->add_subcommand("monotone", "monotonicity witness sweep");
    int em_n = 8;
    std::uint64_t em_seed = 11;
    std::vector<double> em_alphas = {0.3, 0.6, 0.9};
    exp_mono->add_option("--n", em_n, "resolution level");
    exp_mono->add_option("--seed", em_seed, "witness seed");
    exp_mono->add_option("--alphas", em_alphas, "increasing exponent list");

    auto* exp_copy = exp->add_subcommand("copy", "rescaled-copy claims on the gasket");
    int ec_n = 1, ec_k = 1, ec_grid = 10;
    double ec_alpha = 0.5;
    exp_copy->add_option("--n", ec_n, "construction index n");
    exp_copy->add_option("--k", ec_k, "construction index k");
    exp_copy->add_option("--grid", ec_grid, "grid resolution");
    exp_copy->add_option("--alpha", ec_alpha, "Hoelder exponent");

    try {
        app.parse(argc, argv);
        hll::set_thread_cap(threads);

        if (sponge->parsed()) {
            const hll::SpongeSpec spec =
                sponge_kmax > 0 ? hll::SpongeSpec{sponge_kmax, 1.0}
                                : hll::sponge_spec_for(sponge_n, 1.0);
            hll::write_grid(hll::rasterize_sponge(spec, sponge_n), sponge_out);
            std::cout << "wrote " << sponge_out << "\n";
            return 0;
        }
        if (ifs_cmd->parsed()) {
            hll::IFS ifs;
            if (!ifs_file.empty()) {
                ifs = hll::parse_ifs_config(ifs_file);
            } else if (ifs_preset == "sierpinski") {
                ifs = hll::sierpinski_preset();
            } else if (ifs_preset == "sierpinski-unit") {
                ifs = hll::sierpinski_right_unit();
            } else if (ifs_preset == "square") {
                ifs = hll::square_preset();
            } else {
                hll::fail("invalid-argument", "need --file or a known --preset");
            }
            hll::write_grid(hll::ifs_rasterize(ifs, ifs_depth, ifs_n), ifs_out);
            std::cout << "wrote " << ifs_out << "\n";
            return 0;
        }
        if (boxdim->parsed()) {
            const hll::GridSet g = hll::read_grid(boxdim_in);
            const ScaleRange r = parse_scales(boxdim_scales);
            const hll::DimEstimate est = hll::box_dimension(g, r.lo, r.hi);
            std::cout << "slope " << est.slope << " residual " << est.residual << "\n";
            if (!boxdim_json.empty())
                hll::write_text(boxdim_json, hll::to_json(est).dump(2) + "\n");
            if (!boxdim_svg.empty()) hll::emit_plot(est, boxdim_svg);
            return 0;
        }
        if (fn_extend->parsed()) {
            const hll::HolderSample s = read_samples_json(ext_samples);
            hll::write_function(hll::mcshane_extend_to_grid(s, ext_p, ext_n), ext_out);
            std::cout << "wrote " << ext_out << "\n";
            return 0;
        }
        if (fn_mollify->parsed()) {
            const hll::GridFunction f = hll::read_function(mol_in);
            const hll::Mollifier m(mol_r, f.dim(), f.level());
            hll::write_function(hll::mollify(f, m), mol_out);
            std::cout << "wrote " << mol_out << "\n";
            return 0;
        }
        if (fn_interp->parsed()) {
            const hll::GridFunction f = hll::read_function(interp_in);
            const hll::SimplicialInterpolant interp = hll::build_interpolant(f, interp_delta);
            hll::write_text(interp_out, hll::to_json(interp).dump(2) + "\n");
            std::cout << "wrote " << interp_out << "\n";
            return 0;
        }
        if (fn_rescale->parsed()) {
            const hll::IFS ifs = hll::sierpinski_preset();
            const hll::GridSet mask = hll::ifs_rasterize(ifs, rs_grid, rs_grid);
            const double beta = 0.5;
            const double diam = std::sqrt(2.0) / 2.0;
            const hll::SimplicialInterpolant f_n = hll::build_interpolant(
                [beta](const hll::Vec& x) { return beta * (x[0] + x[1]); }, 2, 1.0 / 8.0);
            hll::GridFunction f_0 = hll::GridFunction::from_function(
                2, rs_grid, rs_alpha, 0.5, [](const hll::Vec& x) { return 0.4 * x[1]; });
            hll::RescaleInputs in;
            in.f_n = &f_n;
            in.c_n = beta * std::sqrt(2.0) * std::pow(diam, 1.0 - rs_alpha);
            in.lipschitz = beta * std::sqrt(2.0);
            in.f_0 = &f_0;
            in.ifs = &ifs;
            in.mask = &mask;
            in.alpha = rs_alpha;
            in.n = rs_n;
            in.k = rs_k;
            hll::write_function(hll::rescaled_copy(in).f_star, rs_out);
            std::cout << "wrote " << rs_out << "\n";
            return 0;
        }
        if (sweep->parsed()) {
            const hll::GridFunction f = hll::read_function(sweep_fn);
            const hll::GridSet mask = hll::read_grid(sweep_mask);
            const ScaleRange r = parse_scales(sweep_scales);
            const hll::LevelProfile profile =
                hll::level_sweep(f, mask, sweep_levels, hll::scale_range(r.lo, r.hi));
            hll::write_profile_csv(profile, sweep_out);
            if (!sweep_svg.empty()) hll::emit_plot(profile, sweep_svg);
            std::cout << "wrote " << sweep_out << " (" << profile.nonempty_count() << "/"
                      << profile.levels.size() << " nonempty levels)\n";
            return 0;
        }
        if (exp_sponge->parsed())
            return run_experiment(hll::sponge_theorem(es_alpha, es_n, es_levels), exp_out_base);
        if (exp_upper->parsed())
            return run_experiment(hll::upper_bound_audit_standard(eu_n, eu_seed), exp_out_base);
        if (exp_slicing->parsed())
            return run_experiment(hll::slicing_audit_standard(), exp_out_base);
        if (exp_mono->parsed()) {
            hll::GridSet square(2, em_n);
            for (std::uint64_t i = 0; i < square.total_cells(); ++i) square.set(i);
            return run_experiment(hll::monotonicity_sweep("square", square, em_alphas, em_seed),
                                  exp_out_base);
        }
        if (exp_copy->parsed())
            return run_experiment(hll::selfsimilar_copy_experiment(ec_n, ec_k, ec_grid, ec_alpha),
                                  exp_out_base);

        std::cerr << app.help() << "\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n" << app.help() << "\n";
        return 2;
    } catch (const hll::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
