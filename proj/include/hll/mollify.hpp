#pragma once

#include "hll/holder.hpp"

namespace hll {

// Bump eta(x) = exp(-1/(1-|x|^2)) for |x| < 1, 0 otherwise.
double bump(double r2);

// eta_r(x) = c_r * eta(x/r) with c_r fixed so the kernel integrates to 1
// on the tensor-product midpoint lattice it is used with (there is no
// closed form for c_r).
class Mollifier {
public:
    // quad_per_cell: quadrature points per grid step inside the ball.
    Mollifier(double r, int p, int grid_level, int quad_per_cell = 4);

    double radius() const { return r_; }
    double normalization() const { return c_r_; }
    double quad_step() const { return h_; }

    const std::vector<Vec>& offsets() const { return offsets_; }
    const std::vector<double>& weights() const { return weights_; }  // sum to 1

private:
    double r_;
    double c_r_;
    double h_;
    std::vector<Vec> offsets_;
    std::vector<double> weights_;
};

// Discrete convolution f * eta_r on the vertex lattice. Coordinates
// clamp to the cube near the boundary (a 1-Lipschitz reparametrization,
// so the Hoelder bound survives). r below 2 grid steps signals
// under-resolved-kernel.
GridFunction mollify(const GridFunction& f, const Mollifier& m);

}  // namespace hll
