#include "hll/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hll {

double longest_edge(const SimplexVertices& s) {
    double a = 0.0;
    for (Eigen::Index i = 0; i < s.cols(); ++i)
        for (Eigen::Index j = i + 1; j < s.cols(); ++j)
            a = std::max(a, (s.col(i) - s.col(j)).norm());
    return a;
}

double min_altitude(const SimplexVertices& s) {
    const Eigen::Index p = s.rows();
    if (s.cols() != p + 1) fail("invalid-argument", "a p-simplex needs p+1 vertices");
    double b = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i <= p; ++i) {
        // distance from vertex i to the affine hull of the rest
        Eigen::Index anchor = (i == 0) ? 1 : 0;
        Eigen::MatrixXd basis(p, p - 1);
        Eigen::Index col = 0;
        for (Eigen::Index j = 0; j <= p; ++j) {
            if (j == i || j == anchor) continue;
            basis.col(col++) = s.col(j) - s.col(anchor);
        }
        const Eigen::VectorXd v = s.col(i) - s.col(anchor);
        double dist;
        if (basis.cols() == 0) {
            dist = v.norm();
        } else {
            const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(v);
            dist = (v - basis * coef).norm();
        }
        b = std::min(b, dist);
    }
    return b;
}

double simplicial_lipschitz_bound(const SimplexVertices& s, double K) {
    if (!(K > 0.0)) fail("invalid-argument", "Lipschitz constant must be positive");
    const double a = longest_edge(s);
    const double b = min_altitude(s);
    if (!(b > 1e-12 * a)) fail("degenerate-simplex", "simplex altitude vanishes");
    const double p = static_cast<double>(s.rows());
    return (p + 1.0) * K * (a / b);
}

std::vector<SimplexVertices> kuhn_simplices(int p) {
    if (p < 1 || p > kMaxDim) fail("invalid-argument", "ambient dimension must be 1..3");
    std::vector<int> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SimplexVertices> out;
    do {
        SimplexVertices s(p, p + 1);
        s.col(0).setZero();
        for (int j = 1; j <= p; ++j) {
            s.col(j) = s.col(j - 1);
            s(perm[static_cast<std::size_t>(j - 1)], j) += 1.0;
        }
        out.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

double kuhn_aspect(int p) {
    const SimplexVertices s = kuhn_simplices(p).front();
    return longest_edge(s) / min_altitude(s);
}

SimplicialInterpolant::SimplicialInterpolant(int p, int subdivisions, Eigen::ArrayXd vertex_values)
    : p_(p), m_(subdivisions), values_(std::move(vertex_values)) {
    if (p < 1 || p > kMaxDim) fail("invalid-argument", "ambient dimension must be 1..3");
    if (m_ < 1) fail("invalid-argument", "subdivision count must be >= 1");
    std::uint64_t expected = 1;
    for (int i = 0; i < p_; ++i) expected *= vertices_per_axis();
    if (static_cast<std::uint64_t>(values_.size()) != expected)
        fail("invalid-argument", "vertex value count does not match the lattice");
}

std::uint64_t SimplicialInterpolant::vertex_index(
    const std::array<std::uint32_t, kMaxDim>& coords) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < p_; ++i) {
        if (coords[i] >= vertices_per_axis()) fail("invalid-argument", "lattice index out of range");
        idx = idx * vertices_per_axis() + coords[i];
    }
    return idx;
}

double SimplicialInterpolant::evaluate(const Vec& x) const {
    std::array<std::uint32_t, kMaxDim> base{};
    std::array<double, kMaxDim> u{};
    for (int i = 0; i < p_; ++i) {
        if (x[i] < -1e-12 || x[i] > 1.0 + 1e-12)
            fail("out-of-domain", "evaluation point outside the unit cube");
        double t = std::clamp(x[i], 0.0, 1.0) * m_;
        double fl = std::floor(t);
        if (fl >= m_) fl = m_ - 1.0;
        base[i] = static_cast<std::uint32_t>(fl);
        u[i] = t - fl;
    }
    // Kuhn simplex of the subcell: sort local coordinates descending.
    std::array<int, kMaxDim> order{};
    std::iota(order.begin(), order.begin() + p_, 0);
    std::sort(order.begin(), order.begin() + p_,
              [&](int a, int b) { return u[a] > u[b] || (u[a] == u[b] && a < b); });

    double value = (1.0 - u[order[0]]) * values_[static_cast<Eigen::Index>(vertex_index(base))];
    std::array<std::uint32_t, kMaxDim> walk = base;
    for (int j = 0; j < p_; ++j) {
        walk[order[j]] += 1;
        const double gamma = u[order[j]] - ((j + 1 < p_) ? u[order[j + 1]] : 0.0);
        value += gamma * values_[static_cast<Eigen::Index>(vertex_index(walk))];
    }
    return value;
}

std::vector<SimplexRecord> SimplicialInterpolant::simplices() const {
    const std::vector<SimplexVertices> pattern = kuhn_simplices(p_);
    const double d = delta();
    std::vector<SimplexRecord> out;

    std::array<std::uint32_t, kMaxDim> cell{};
    while (true) {
        for (const SimplexVertices& unit : pattern) {
            SimplexRecord rec;
            rec.vertices.resize(p_, p_ + 1);
            rec.values.resize(p_ + 1);
            for (int j = 0; j <= p_; ++j) {
                std::array<std::uint32_t, kMaxDim> v{};
                for (int i = 0; i < p_; ++i) {
                    v[i] = cell[i] + static_cast<std::uint32_t>(std::lround(unit(i, j)));
                    rec.vertices(i, j) = v[i] * d;
                }
                rec.values[j] = values_[static_cast<Eigen::Index>(vertex_index(v))];
            }
            rec.a = longest_edge(rec.vertices);
            rec.b = min_altitude(rec.vertices);
            out.push_back(std::move(rec));
        }
        int axis = p_ - 1;
        while (axis >= 0) {
            if (++cell[axis] < static_cast<std::uint32_t>(m_)) break;
            cell[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return out;
}

namespace {

int subdivision_count(double delta) {
    if (!(delta > 0.0) || delta > 1.0) fail("invalid-argument", "delta must lie in (0, 1]");
    const double inv = 1.0 / delta;
    const int m = static_cast<int>(std::lround(inv));
    if (m < 1 || std::abs(inv - m) > 1e-9 * inv)
        fail("invalid-argument", "delta must divide the cube evenly");
    return m;
}

}  // namespace

SimplicialInterpolant build_interpolant(const std::function<double(const Vec&)>& fn, int p,
                                        double delta) {
    const int m = subdivision_count(delta);
    std::uint64_t total = 1;
    for (int i = 0; i < p; ++i) total *= static_cast<std::uint64_t>(m) + 1;
    Eigen::ArrayXd values(static_cast<Eigen::Index>(total));

    std::array<std::uint32_t, kMaxDim> v{};
    std::uint64_t idx = 0;
    while (true) {
        Vec x(p);
        for (int i = 0; i < p; ++i) x[i] = static_cast<double>(v[i]) / m;
        values[static_cast<Eigen::Index>(idx++)] = fn(x);
        int axis = p - 1;
        while (axis >= 0) {
            if (++v[axis] <= static_cast<std::uint32_t>(m)) break;
            v[axis] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
    return SimplicialInterpolant(p, m, std::move(values));
}

SimplicialInterpolant build_interpolant(const GridFunction& f, double delta) {
    return build_interpolant([&f](const Vec& x) { return f.sample(x); }, f.dim(), delta);
}

}  // namespace hll
