#include "hll/dimension.hpp"

#include <cmath>

namespace hll {

DimEstimate box_dimension(const std::vector<std::pair<int, std::uint64_t>>& counts) {
    if (counts.size() < 3) fail("insufficient-data", "box dimension needs at least 3 scales");

    bool any_zero = false, any_nonzero = false;
    for (const auto& [N, a] : counts) {
        (void)N;
        (a == 0 ? any_zero : any_nonzero) = true;
    }

    DimEstimate est;
    for (const auto& [N, a] : counts) {
        est.scales.push_back(N);
        est.counts.push_back(a);
    }

    if (!any_nonzero) return est;  // empty set: dim_B = 0 by convention
    if (any_zero) fail("inconsistent-input", "zero count among nonempty scales");

    const std::size_t n = counts.size();
    std::vector<double> y(n);
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = std::log2(static_cast<double>(counts[i].second));
        xbar += counts[i].first;
        ybar += y[i];
    }
    xbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = counts[i].first - xbar;
        sxx += dx * dx;
        sxy += dx * (y[i] - ybar);
    }
    if (sxx == 0.0) fail("inconsistent-input", "all scales identical");
    est.slope = sxy / sxx;

    const double intercept = ybar - est.slope * xbar;
    for (std::size_t i = 0; i < n; ++i) {
        const double dev = std::abs(y[i] - (est.slope * counts[i].first + intercept));
        est.residual = std::max(est.residual, dev);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double dN = counts[i + 1].first - counts[i].first;
        est.step_slopes.push_back((y[i + 1] - y[i]) / dN);
    }
    return est;
}

std::vector<std::pair<int, std::uint64_t>> box_counts(const GridSet& g, int n_min, int n_max) {
    if (n_min < 0 || n_max > g.level() || n_min > n_max)
        fail("invalid-argument", "scale range must lie inside [0, N]");
    std::vector<std::pair<int, std::uint64_t>> out;
    GridSet current = g;
    for (int s = g.level(); s >= n_min; --s) {
        if (s <= n_max) out.emplace_back(s, cell_count(current));
        if (s > n_min) current = coarsen(current, 1);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

DimEstimate box_dimension(const GridSet& g, int n_min, int n_max) {
    return box_dimension(box_counts(g, n_min, n_max));
}

}  // namespace hll
