#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "hll/dimension.hpp"
#include "hll/fractal.hpp"
#include "hll/ifs.hpp"

using namespace hll;

namespace {

// Independent per-cell oracle for F0 occupancy at resolution N <= 12:
// subtract the open gaps of generations 2 and 3 from the closed cell
// using integers scaled by 2^27 (deeper generations are narrower than
// 2^-64 and cannot empty a cell at these resolutions).
bool cell_meets_f0_oracle(std::uint32_t i, int N) {
    using I = long long;
    const int S = 27;
    I lo = static_cast<I>(i) << (S - N);
    I hi = static_cast<I>(i + 1) << (S - N);
    hi = std::min<I>(hi, I{1} << (S - 1));
    if (lo > hi) return false;
    std::vector<std::pair<I, I>> segs = {{lo, hi}};
    for (int k : {2, 3}) {
        const I sp = I{1} << (S - k * k);
        const I wd = I{1} << (S - k * k * k);
        std::vector<std::pair<I, I>> next;
        for (auto [a, b] : segs) {
            I cursor = a;
            for (I j = a / sp; j * sp <= b; ++j) {
                const I glo = j * sp, ghi = glo + wd;
                if (cursor <= glo) {
                    if (cursor <= std::min(b, glo)) next.emplace_back(cursor, std::min(b, glo));
                    cursor = ghi;
                } else if (cursor < ghi) {
                    cursor = ghi;
                }
                if (cursor > b) break;
            }
            if (cursor <= b) next.emplace_back(cursor, b);
        }
        segs = std::move(next);
    }
    return !segs.empty();
}

std::uint64_t pow3(int n) {
    std::uint64_t v = 1;
    while (n-- > 0) v *= 3;
    return v;
}

}  // namespace

TEST_CASE("sponge membership at the load-bearing endpoints") {
    const SpongeSpec spec{4, 1.0};
    CHECK(sponge_membership(0.0, spec));          // left endpoint of an open gap
    CHECK_FALSE(sponge_membership(std::exp2(-9.0), spec));  // inside (0, 2^-8)
    CHECK(sponge_membership(0.5, spec));          // gap left endpoint at every k
    // right endpoint of the j=0 gap of G_2 is never removed either
    CHECK(sponge_membership(std::exp2(-8.0), spec));
    // strictly inside the j=3 gap of G_2
    CHECK_FALSE(sponge_membership(3.0 / 16.0 + std::exp2(-10.0), spec));
    CHECK_THROWS_AS(sponge_membership(0.75, spec), Error);
    CHECK_THROWS_AS(sponge_membership(-0.1, spec), Error);
}

TEST_CASE("1-D occupancy matches the independent interval oracle") {
    for (int N : {4, 6, 8, 10, 12}) {
        const auto occ = sponge_occupancy_1d(sponge_spec_for(N, 1.0), N);
        for (std::uint32_t i = 0; i < occ.size(); ++i) {
            INFO("N=", N, " cell=", i);
            CHECK(static_cast<bool>(occ[i]) == cell_meets_f0_oracle(i, N));
        }
    }
}

TEST_CASE("frozen occupancy counts") {
    auto count = [](int N) {
        const auto occ = sponge_occupancy_1d(sponge_spec_for(N, 1.0), N);
        std::uint64_t c = 0;
        for (auto b : occ) c += b;
        return c;
    };
    CHECK(count(8) == 129);   // no cell fits inside a gap yet
    CHECK(count(9) == 257);   // still none: both gap cells keep an endpoint
    CHECK(count(10) == 497);  // two interior cells per G_2 gap, 8 gaps
    CHECK(count(12) == 1937);
}

TEST_CASE("rasterization at N=1 keeps all four cells") {
    const GridSet g = rasterize_sponge(SpongeSpec{2, 1.0}, 1);
    CHECK(cell_count(g) == 4);  // closed cells meet F0 x F0 at the 1/2 boundary
}

TEST_CASE("gap generations beyond the default cutoff never change occupancy") {
    for (int N : {6, 8}) {
        const GridSet a = rasterize_sponge(SpongeSpec{2, 1.0}, N);
        const GridSet b = rasterize_sponge(SpongeSpec{4, 1.0}, N);
        CHECK(a == b);
    }
    const GridSet c = rasterize_sponge(SpongeSpec{3, 1.0}, 12);
    const GridSet d = rasterize_sponge(SpongeSpec{4, 1.0}, 12);
    CHECK(c == d);
}

TEST_CASE("product structure of the sponge bitset") {
    const int N = 8;
    const auto occ = sponge_occupancy_1d(sponge_spec_for(N, 1.0), N);
    const GridSet g = rasterize_sponge(sponge_spec_for(N, 1.0), N);
    for (std::uint32_t i = 0; i < occ.size(); ++i)
        for (std::uint32_t j = 0; j < occ.size(); ++j)
            CHECK(g.test(CellIndex{2, {i, j}}) == (occ[i] && occ[j]));
}

TEST_CASE("removed length stays below the gap series bound") {
    // total gap length <= sum 2^(k^2-1-k^3) ~ 0.031252
    CHECK(f0_measure(4) >= 0.5 - 0.031252);
    CHECK(f0_measure(4) == doctest::Approx(0.468748211861).epsilon(1e-9));
    const auto occ = sponge_occupancy_1d(sponge_spec_for(20, 1.0), 20);
    std::uint64_t c = 0;
    for (auto b : occ) c += b;
    CHECK(static_cast<double>(c) * std::exp2(-20) >= 0.46875 - std::exp2(-18));
}

TEST_CASE("gap tail sums against direct summation") {
    // k=2, alpha=1: 2^-4 + 2^-18 + 2^-48 + ...
    const double direct2 = std::exp2(-4) + std::exp2(-18) + std::exp2(-48) + std::exp2(-100);
    CHECK(gap_tail_sum(2, 1.0) == doctest::Approx(direct2).epsilon(1e-12));
    // k=4, alpha=1: first-term dominance, 2^(16-64)
    CHECK(gap_tail_sum(4, 1.0) == doctest::Approx(std::exp2(-48)).epsilon(1e-9));
    // termwise monotone in alpha
    for (int k : {2, 3, 5}) CHECK(gap_tail_sum(k, 0.999) > gap_tail_sum(k, 1.0));
    // first term dominates by doubly-exponential decay
    for (int k = 2; k <= 6; ++k)
        for (double a : {0.3, 0.6, 1.0}) {
            const double first = std::exp2(static_cast<double>(k) * k -
                                           a * static_cast<double>(k) * k * k);
            CHECK(gap_tail_sum(k, a) < 2.0 * first);
        }
}

TEST_CASE("minimal_k at the paper's constants") {
    CHECK(minimal_k(1.0, 1.0) == 4);
    CHECK(minimal_k(1.0, 1e6) == 2);
    // nonincreasing in p_m
    int prev = 64;
    for (double pm : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
        const int k = minimal_k(1.0, pm);
        CHECK(k <= prev);
        prev = k;
    }
    // the k=2 and k=3 threshold checks behind minimal_k(1,1) = 4
    CHECK(gap_tail_sum(2, 1.0) > std::exp2(-4) / 1000.0);
    CHECK(gap_tail_sum(3, 1.0) > std::exp2(-9) / 1000.0);
    CHECK(gap_tail_sum(4, 1.0) <= std::exp2(-16) / 1000.0);
}

TEST_CASE("ifs validation") {
    IFS bad = sierpinski_right_unit();
    bad.maps.pop_back();
    bad.maps.pop_back();
    CHECK_THROWS_AS(bad.validate(), Error);  // needs two maps

    IFS escape = sierpinski_right_unit();
    escape.maps[1].offset[0] = 0.7;  // image pokes out of the cube
    CHECK_THROWS_AS(ifs_rasterize(escape, 3, 3), Error);

    IFS expanding = sierpinski_right_unit();
    expanding.maps[0].ratio = 1.0;
    CHECK_THROWS_AS(expanding.validate(), Error);
}

TEST_CASE("square preset fills the square") {
    for (int N : {3, 5}) {
        const GridSet g = ifs_rasterize(square_preset(), N, N);
        CHECK(cell_count(g) == (std::uint64_t{1} << (2 * N)));
    }
}

TEST_CASE("deep words stabilize at the attractor cover") {
    const IFS gasket = sierpinski_right_unit();
    const GridSet shallow = ifs_rasterize(gasket, 4, 4);
    const GridSet deep = ifs_rasterize(gasket, 24, 4);
    CHECK(shallow == deep);
    CHECK(cell_count(deep) == pow3(4));
}

TEST_CASE("prefractals nest with depth") {
    const IFS gasket = sierpinski_preset();
    const int N = 7;
    const GridSet d3 = ifs_rasterize(gasket, 3, N);
    const GridSet d4 = ifs_rasterize(gasket, 4, N);
    for (std::uint64_t lin = 0; lin < d4.total_cells(); ++lin)
        if (d4.test(lin)) CHECK(d3.test(lin));
}

TEST_CASE("preset gasket has diameter below one and slope log2(3)") {
    const GridSet g = ifs_rasterize(sierpinski_preset(), 9, 9);
    CHECK(cell_count(g) == pow3(8));  // half-size gasket: one generation behind
    CHECK(box_dimension(g, 4, 9).slope == doctest::Approx(std::log2(3.0)).epsilon(1e-10));
}

TEST_CASE("ifs config parsing") {
    const std::string path = "test_ifs_config.txt";
    {
        std::ofstream out(path);
        out << "# right gasket\n";
        out << "0.5 0.0 0.0\n0.5 0.5 0.0\n0.5 0.0 0.5\n";
    }
    const IFS parsed = parse_ifs_config(path);
    CHECK(parsed.maps.size() == 3);
    CHECK(ifs_rasterize(parsed, 6, 6) == ifs_rasterize(sierpinski_right_unit(), 6, 6));

    {
        std::ofstream out(path);
        out << "0.5 0.1\n";  // one map only, and wrong arity for p=2
    }
    CHECK_THROWS_AS(parse_ifs_config(path), Error);
    CHECK_THROWS_AS(parse_ifs_config("nonexistent_ifs_file.txt"), Error);
    std::remove(path.c_str());
}

TEST_CASE("rotated map rasterizes conservatively") {
    IFS ifs;
    ifs.p = 2;
    for (auto [ox, oy, ang] : {std::tuple{0.25, 0.25, 0.3}, {0.1, 0.6, 0.0}}) {
        Similarity s;
        s.ratio = 0.3;
        s.offset = Vec(2);
        s.offset << ox, oy;
        s.angle = ang;
        ifs.maps.push_back(s);
    }
    const GridSet g = ifs_rasterize(ifs, 5, 6);
    CHECK(cell_count(g) > 0);
    // every attractor point sits in an occupied cell: spot-check the map
    // fixed points, which always belong to the attractor
    for (const Similarity& s : ifs.maps) {
        // fixed point of x -> rM x + o
        Eigen::Matrix2d m = Eigen::Matrix2d::Identity() - s.linear(2);
        Eigen::Vector2d fp = m.inverse() * Eigen::Vector2d(s.offset[0], s.offset[1]);
        CellIndex c;
        c.p = 2;
        for (int i = 0; i < 2; ++i)
            c.coords[i] = static_cast<std::uint32_t>(
                std::min(63.0, std::floor(fp[i] * 64.0)));
        CHECK(g.test(c));
    }
}
