#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hll/holder.hpp"

namespace hll {

// Columns are the p+1 vertices of a p-simplex.
using SimplexVertices = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 4>;

// Length of the longest edge.
double longest_edge(const SimplexVertices& s);

// Min over vertices of the distance to the opposite facet's affine hull.
double min_altitude(const SimplexVertices& s);

// M = (p+1) * K * a/b; similarity invariant. Near-degenerate simplices
// (b below 1e-12 * a) signal degenerate-simplex.
double simplicial_lipschitz_bound(const SimplexVertices& s, double K);

// The p! Kuhn (Freudenthal) simplices of the unit cube, one per
// coordinate ordering.
std::vector<SimplexVertices> kuhn_simplices(int p);

// a/b of a Kuhn simplex (shared by the whole family up to similarity).
double kuhn_aspect(int p);

struct SimplexRecord {
    SimplexVertices vertices;
    Eigen::VectorXd values;
    double a = 0.0;
    double b = 0.0;
};

// Piecewise-affine interpolant on the Kuhn triangulation of a uniform
// subdivision of the unit cube into (1/delta)^p subcells.
class SimplicialInterpolant {
public:
    SimplicialInterpolant(int p, int subdivisions, Eigen::ArrayXd vertex_values);

    int dim() const { return p_; }
    int subdivisions() const { return m_; }
    double delta() const { return 1.0 / m_; }

    // Barycentric evaluation sum gamma_i * f(x_i) in the containing
    // simplex; outside the cube signals out-of-domain.
    double evaluate(const Vec& x) const;

    // Explicit simplex list with per-simplex a, b (m^p * p! entries).
    std::vector<SimplexRecord> simplices() const;

    std::uint32_t vertices_per_axis() const { return static_cast<std::uint32_t>(m_) + 1; }
    const Eigen::ArrayXd& vertex_values() const { return values_; }
    std::uint64_t vertex_index(const std::array<std::uint32_t, kMaxDim>& coords) const;

private:
    int p_;
    int m_;
    Eigen::ArrayXd values_;
};

// Interpolant of fn sampled at the subdivision lattice. delta must divide
// the cube evenly (delta = 1/subdivisions).
SimplicialInterpolant build_interpolant(const std::function<double(const Vec&)>& fn, int p,
                                        double delta);

SimplicialInterpolant build_interpolant(const GridFunction& f, double delta);

}  // namespace hll
