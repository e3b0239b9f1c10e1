#pragma once

#include <string>
#include <vector>

#include "hll/io.hpp"
#include "hll/level.hpp"
#include "hll/rescale.hpp"

namespace hll {

// Reproducible audit: parameters capture every input, seed, resolution
// and tolerance; verdicts are booleans derived from the measurements at
// the recorded tolerances. Byte-identical reruns are part of the
// contract (the timestamp is the one ignorable field).
struct ExperimentReport {
    std::string name;
    Json parameters = Json::object();
    Json measurements = Json::object();
    Json verdicts = Json::object();
    std::vector<std::pair<std::string, std::string>> artifacts;  // filename -> bytes

    bool all_passed() const;
    Json to_json(bool with_timestamp) const;
};

// Writes report.json plus artifacts into base/<name>-<param hash>/ and
// returns the run directory.
std::string write_report(const ExperimentReport& report, const std::string& base);

// Theorem audit for the sponge F0 x F0: witness family f_tau = y + tau*x,
// gap-condition k, exact column image-measure bound, Fubini area, level
// sweep and the D* estimate.
ExperimentReport sponge_theorem(double alpha, int N, int level_count);

// dstar <= max(0, dim_B - 1) + tol for every function in the family.
ExperimentReport upper_bound_audit(const std::string& mask_name, const GridSet& mask,
                                   const std::vector<GridFunction>& family,
                                   const std::vector<int>& scales, int level_count = 128);

// Standard three-mask audit (full square, gasket, sponge) with seeded
// inf-convolution witnesses.
ExperimentReport upper_bound_audit_standard(int N, std::uint64_t seed);

// Violating-slice fraction against the 2^(-eps N) decay, exhaustive over
// all slices, per axis and eps, at the finest two scales.
ExperimentReport slicing_audit(const std::string& mask_name, const GridSet& mask,
                               const std::vector<int>& axes, const std::vector<double>& eps_list);

ExperimentReport slicing_audit_standard();

// Witness-family proxy for the monotonicity of D*(alpha, F) in alpha;
// the report labels the proxy status explicitly.
ExperimentReport monotonicity_sweep(const std::string& mask_name, const GridSet& mask,
                                    const std::vector<double>& alphas, std::uint64_t seed);

// The rescaled-copy construction on the gasket preset: Claims 1 and 2,
// anchor equality, placement disjointness and the size bracket.
ExperimentReport selfsimilar_copy_experiment(int n, int k, int N, double alpha);

}  // namespace hll
