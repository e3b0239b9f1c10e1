#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "hll/grid.hpp"

namespace hll {

// Finite set of (point, value) pairs claimed to be c-Hoelder-alpha;
// the pairwise bound is verified on construction.
class HolderSample {
public:
    HolderSample(std::vector<Vec> points, Eigen::VectorXd values, double alpha, double c);

    // Makes arbitrary raw values admissible by replacing them with the
    // inf-convolution over the point set (the values of a genuine
    // c-Hoelder-alpha function).
    static HolderSample repair(std::vector<Vec> points, const Eigen::VectorXd& raw_values,
                               double alpha, double c);

    const std::vector<Vec>& points() const { return points_; }
    const Eigen::VectorXd& values() const { return values_; }
    double alpha() const { return alpha_; }
    double c() const { return c_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<Vec> points_;
    Eigen::VectorXd values_;
    double alpha_;
    double c_;
};

// Real values on the vertex lattice of the unit cube at resolution N,
// with Hoelder metadata (claimed exponent and constant).
class GridFunction {
public:
    GridFunction(int p, int N, double alpha, double c);

    static GridFunction from_function(int p, int N, double alpha, double c,
                                      const std::function<double(const Vec&)>& fn);

    int dim() const { return p_; }
    int level() const { return N_; }
    double alpha() const { return alpha_; }
    double c() const { return c_; }
    void set_holder(double alpha, double c) { alpha_ = alpha; c_ = c; }

    std::uint32_t vertices_per_axis() const { return (1u << N_) + 1; }
    std::uint64_t vertex_count() const { return values_.size(); }

    std::uint64_t vertex_index(const std::array<std::uint32_t, kMaxDim>& coords) const;
    std::array<std::uint32_t, kMaxDim> vertex_at(std::uint64_t linear) const;
    Vec vertex_position(std::uint64_t linear) const;

    double operator[](std::uint64_t linear) const { return values_[static_cast<Eigen::Index>(linear)]; }
    double& operator[](std::uint64_t linear) { return values_[static_cast<Eigen::Index>(linear)]; }
    const Eigen::ArrayXd& values() const { return values_; }
    Eigen::ArrayXd& values() { return values_; }

    // Multilinear interpolation; coordinates clamp to the cube.
    double sample(const Vec& x) const;

    bool same_grid(const GridFunction& other) const {
        return p_ == other.p_ && N_ == other.N_;
    }

private:
    int p_;
    int N_;
    double alpha_;
    double c_;
    Eigen::ArrayXd values_;
};

struct HolderEstimate {
    double value = 0.0;
    bool exact = false;  // false: deterministic stratified lower bound
};

// sup |f(x)-f(y)| / |x-y|^alpha. Exact when the pair count fits the
// budget, otherwise a seeded stratified sample (reported as lower bound).
HolderEstimate holder_constant(const HolderSample& s, double alpha, std::uint64_t pair_budget);
HolderEstimate holder_constant(const GridFunction& f, double alpha, std::uint64_t pair_budget);

// Restricted to vertices incident to occupied mask cells.
HolderEstimate holder_constant_masked(const GridFunction& f, const GridSet& mask, double alpha,
                                      std::uint64_t pair_budget);

// Vertices of the function grid incident to occupied cells of the mask
// (mask resolution must not exceed the function's).
std::vector<std::uint64_t> mask_vertices(const GridFunction& f, const GridSet& mask);

// McShane inf-convolution: min over samples of v_i + c*|x - y_i|^alpha.
// Agrees with the sample values on the sample set and is c-Hoelder-alpha
// on all of R^p.
double mcshane_extend(const HolderSample& s, const Vec& x);

GridFunction mcshane_extend_to_grid(const HolderSample& s, int p, int N);

// Pointwise min(f_n + bound, max(f_nk, f_n - bound)).
GridFunction clamp_combine(const GridFunction& f_n, const GridFunction& f_nk, double bound);

// Range of f over mask-incident vertices.
std::pair<double, double> value_range(const GridFunction& f, const GridSet& mask);

}  // namespace hll
