#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hll/grid.hpp"

namespace hll {

using LinearPart = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

// Contractive similarity x -> ratio * R(angle) * x + offset.
// The rotation angle is honoured in dimension 2 only.
struct Similarity {
    double ratio = 0.5;
    Vec offset;
    double angle = 0.0;

    LinearPart linear(int p) const;
    Vec apply(const Vec& x, int p) const;
};

struct IFS {
    int p = 2;
    std::vector<Similarity> maps;

    double q_min() const;
    void validate() const;
};

// Composed word map: scale * R * x + offset.
struct AffineMap {
    double scale = 1.0;
    LinearPart rot;
    Vec offset;

    static AffineMap identity(int p);
    AffineMap then_inner(const Similarity& s, int p) const;  // this o s
    Vec apply(const Vec& x) const;
    Vec apply_inverse(const Vec& x) const;
};

// Occupancy of the depth-th prefractal: union over all m^depth composed
// images of the ambient cube. Dyadic axis-aligned systems rasterize via
// the exact subdivision rule; anything else rounds outward
// (conservative cover).
GridSet ifs_rasterize(const IFS& ifs, int depth, int N);

// Standard right-triangle gasket on the unit square: a_N = 3^N exactly.
IFS sierpinski_right_unit();

// Gasket with legs 1/2, diameter sqrt(2)/2 <= 1; the experiments preset.
IFS sierpinski_preset();

// Four ratio-1/2 maps whose attractor is the full unit square.
IFS square_preset();

// One map per non-comment line: "ratio o1 [o2 [o3]] [angle]".
// An optional leading "p D" line fixes the ambient dimension (default 2).
IFS parse_ifs_config(const std::string& path);

}  // namespace hll
