#include "hll/mollify.hpp"

#include <cmath>

namespace hll {

double bump(double r2) {
    if (r2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - r2));
}

Mollifier::Mollifier(double r, int p, int grid_level, int quad_per_cell) : r_(r) {
    if (!(r > 0.0)) fail("invalid-argument", "mollifier radius must be positive");
    if (p < 1 || p > kMaxDim) fail("invalid-argument", "ambient dimension must be 1..3");
    if (quad_per_cell < 1) fail("invalid-argument", "quadrature refinement must be >= 1");
    h_ = std::exp2(-grid_level) / quad_per_cell;

    const int span = static_cast<int>(std::ceil(r / h_));
    std::array<int, kMaxDim> it{};
    it.fill(-span);
    double raw_sum = 0.0;
    while (true) {
        Vec z(p);
        for (int i = 0; i < p; ++i) z[i] = (it[i] + 0.5) * h_;
        const double rho2 = z.squaredNorm() / (r_ * r_);
        const double w = bump(rho2);
        if (w > 0.0) {
            offsets_.push_back(z);
            weights_.push_back(w);
            raw_sum += w;
        }
        int axis = p - 1;
        while (axis >= 0) {
            if (++it[axis] < span) break;
            it[axis] = -span;
            --axis;
        }
        if (axis < 0) break;
    }
    if (offsets_.empty()) fail("under-resolved-kernel", "no quadrature node inside the kernel");
    for (double& w : weights_) w /= raw_sum;
    const double cell = std::pow(h_, p);
    c_r_ = 1.0 / (raw_sum * cell);
}

GridFunction mollify(const GridFunction& f, const Mollifier& m) {
    const double step = std::exp2(-f.level());
    if (m.radius() < 2.0 * step)
        fail("under-resolved-kernel", "mollifier radius below two grid steps");

    GridFunction out(f.dim(), f.level(), f.alpha(), f.c());
    const auto& offsets = m.offsets();
    const auto& weights = m.weights();
    parallel_for(out.vertex_count(), [&](std::size_t b, std::size_t e) {
        Vec y(f.dim());
        for (std::size_t v = b; v < e; ++v) {
            const Vec x = f.vertex_position(v);
            double acc = 0.0;
            for (std::size_t q = 0; q < offsets.size(); ++q) {
                y = x - offsets[q];
                acc += weights[q] * f.sample(y);
            }
            out[v] = acc;
        }
    });
    return out;
}

}  // namespace hll
