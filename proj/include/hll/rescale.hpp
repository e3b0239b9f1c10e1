#pragma once

#include "hll/holder.hpp"
#include "hll/ifs.hpp"
#include "hll/simplicial.hpp"

namespace hll {

// One placed similarity copy of the attractor: the word map, its ratio,
// and the anchor grid vertex where the copied graph is glued on.
struct Placement {
    int t = 0;
    AffineMap map;
    double ratio = 1.0;       // q(t), product of map ratios along the word
    double copy_diameter = 0.0;  // |Phi_t(F)|
    Vec anchor;
    double level = 0.0;       // p(t), the target value at the anchor
};

struct RescaledCopy {
    GridFunction f_star;               // clamped combination on the grid
    std::vector<Placement> placements; // t = 1 .. L-1
    int L = 0;                         // the L actually used (after retries)
    double bound = 0.0;                // 1/(n+k)
    double c_star = 0.0;               // (1+c_n)/2
    double range_lo = 0.0;             // m_n
    double range_hi = 0.0;             // M_n
    double K = 1.0;                    // max(1, Lipschitz of f_n)
    std::vector<std::uint64_t> sample_vertices;  // grid vertices inside copies
};

struct RescaleInputs {
    const SimplicialInterpolant* f_n = nullptr;
    double c_n = 0.0;       // claimed Hoelder-alpha constant of f_n, < 1
    double lipschitz = 1.0; // Lipschitz constant of f_n
    const GridFunction* f_0 = nullptr;  // |f_0| <= 1/2, constant <= 1/2, f_0(0) = 0
    const IFS* ifs = nullptr;
    const GridSet* mask = nullptr;      // rasterized attractor, anchors live here
    double alpha = 0.5;
    int n = 1;
    int k = 1;
};

// Builds f*_{n,k}: anchors x(t) at the levels p(t), pairwise disjoint
// rescaled copies of f_0 glued on at the anchors, inf-convolution
// extension at constant (1+c_n)/2 off the copies, then the clamp against
// f_n +- 1/(n+k). L starts just above (n+k)(M_n - m_n + 1) and doubles
// until the copy geometry and the sample Hoelder bound check out.
RescaledCopy rescaled_copy(const RescaleInputs& in);

}  // namespace hll
