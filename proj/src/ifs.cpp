#include "hll/ifs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hll {

namespace {

bool is_fine_dyadic(double x) {
    const double scaled = std::ldexp(x, 40);
    return std::floor(scaled) == scaled;
}

bool exactly_power_of_half(double r) {
    const int e = std::ilogb(r);
    return e < 0 && std::ldexp(1.0, e) == r;
}

// Exact subdivision semantics apply when every composed cube image has
// exactly representable dyadic corners.
bool dyadic_system(const IFS& ifs) {
    for (const Similarity& s : ifs.maps) {
        if (s.angle != 0.0) return false;
        if (!exactly_power_of_half(s.ratio)) return false;
        for (int i = 0; i < ifs.p; ++i)
            if (!is_fine_dyadic(s.offset[i])) return false;
    }
    return true;
}

struct Box {
    std::array<double, kMaxDim> lo{};
    std::array<double, kMaxDim> hi{};
};

struct RasterContext {
    const IFS* ifs = nullptr;
    GridSet* out = nullptr;
    int N = 0;
    bool exact = false;
    std::uint64_t visit_budget = 200'000'000;
};

struct CellRange {
    std::array<std::int64_t, kMaxDim> first{};
    std::array<std::int64_t, kMaxDim> last{};
    bool empty = false;
    bool single = true;
};

// Cell index range the box touches along each axis.
// Exact mode: open cell (a, a+1)*2^-N meets the closed box (the
// subdivision count rule; arithmetic is exact for dyadic boxes).
// Conservative mode: closed cells and outward rounding.
CellRange cell_range(const RasterContext& ctx, const Box& box) {
    const int p = ctx.ifs->p;
    const double cells = std::exp2(ctx.N);
    CellRange r;
    for (int i = 0; i < p; ++i) {
        double lo = box.lo[i], hi = box.hi[i];
        std::int64_t first, last;
        if (ctx.exact) {
            const double t = lo * cells;
            const double u = hi * cells;
            first = static_cast<std::int64_t>(std::floor(t));
            last = (std::floor(u) == u) ? static_cast<std::int64_t>(u) - 1
                                        : static_cast<std::int64_t>(std::floor(u));
        } else {
            lo = std::nextafter(lo, -1.0);
            hi = std::nextafter(hi, 2.0);
            const double t = lo * cells;
            first = (std::floor(t) == t) ? static_cast<std::int64_t>(t) - 1
                                         : static_cast<std::int64_t>(std::floor(t));
            last = static_cast<std::int64_t>(std::floor(hi * cells));
        }
        first = std::max<std::int64_t>(0, first);
        last = std::min<std::int64_t>(static_cast<std::int64_t>(cells) - 1, last);
        if (first > last) {
            r.empty = true;
            return r;
        }
        if (first != last) r.single = false;
        r.first[i] = first;
        r.last[i] = last;
    }
    return r;
}

void mark_range(RasterContext& ctx, const CellRange& r) {
    const int p = ctx.ifs->p;
    CellIndex c;
    c.p = p;
    std::array<std::int64_t, kMaxDim> it = r.first;
    while (true) {
        for (int i = 0; i < p; ++i) c.coords[i] = static_cast<std::uint32_t>(it[i]);
        ctx.out->set(c);
        int axis = p - 1;
        while (axis >= 0) {
            if (++it[axis] <= r.last[axis]) break;
            it[axis] = r.first[axis];
            --axis;
        }
        if (axis < 0) break;
    }
}

Box cube_image(const AffineMap& word, int p) {
    Box box;
    if (word.rot.isIdentity(0.0)) {
        for (int i = 0; i < p; ++i) {
            box.lo[i] = word.offset[i];
            box.hi[i] = word.offset[i] + word.scale;
        }
        return box;
    }
    for (int i = 0; i < p; ++i) {
        box.lo[i] = std::numeric_limits<double>::infinity();
        box.hi[i] = -std::numeric_limits<double>::infinity();
    }
    const std::uint32_t corners = 1u << p;
    for (std::uint32_t m = 0; m < corners; ++m) {
        Vec corner(p);
        for (int i = 0; i < p; ++i) corner[i] = (m >> i) & 1 ? 1.0 : 0.0;
        const Vec img = word.apply(corner);
        for (int i = 0; i < p; ++i) {
            box.lo[i] = std::min(box.lo[i], img[i]);
            box.hi[i] = std::max(box.hi[i], img[i]);
        }
    }
    return box;
}

void recurse(RasterContext& ctx, const AffineMap& word, int depth_left) {
    if (ctx.visit_budget-- == 0)
        fail("invalid-argument", "ifs rasterization exceeds the visit budget");

    const Box box = cube_image(word, ctx.ifs->p);
    const CellRange r = cell_range(ctx, box);
    if (r.empty) return;
    // Once the image sits inside a single cell's range, deeper words keep
    // marking that same cell; recursion can stop early.
    if (depth_left == 0 || r.single) {
        mark_range(ctx, r);
        return;
    }
    for (const Similarity& s : ctx.ifs->maps)
        recurse(ctx, word.then_inner(s, ctx.ifs->p), depth_left - 1);
}

}  // namespace

LinearPart Similarity::linear(int p) const {
    LinearPart m = LinearPart::Identity(p, p);
    if (p == 2 && angle != 0.0) {
        const double c = std::cos(angle), s = std::sin(angle);
        m(0, 0) = c;
        m(0, 1) = -s;
        m(1, 0) = s;
        m(1, 1) = c;
    }
    return ratio * m;
}

Vec Similarity::apply(const Vec& x, int p) const { return linear(p) * x + offset; }

double IFS::q_min() const {
    double q = 1.0;
    for (const Similarity& s : maps) q = std::min(q, s.ratio);
    return q;
}

void IFS::validate() const {
    if (p < 1 || p > kMaxDim) fail("invalid-ifs", "ambient dimension must be 1..3");
    if (maps.size() < 2) fail("invalid-ifs", "an ifs needs at least two maps");
    for (const Similarity& s : maps) {
        if (!(s.ratio > 0.0) || !(s.ratio < 1.0))
            fail("invalid-ifs", "contraction ratios must lie in (0, 1)");
        if (s.offset.size() != p) fail("invalid-ifs", "offset dimension mismatch");
        if (s.angle != 0.0 && p != 2) fail("invalid-ifs", "rotations supported in dimension 2 only");
    }
    // images of the ambient cube must stay inside it
    const std::uint32_t corners = 1u << p;
    for (const Similarity& s : maps) {
        for (std::uint32_t m = 0; m < corners; ++m) {
            Vec corner(p);
            for (int i = 0; i < p; ++i) corner[i] = (m >> i) & 1 ? 1.0 : 0.0;
            const Vec img = s.apply(corner, p);
            for (int i = 0; i < p; ++i)
                if (img[i] < -1e-12 || img[i] > 1.0 + 1e-12)
                    fail("invalid-ifs", "map image leaves the ambient cube");
        }
    }
}

AffineMap AffineMap::identity(int p) {
    AffineMap a;
    a.scale = 1.0;
    a.rot = LinearPart::Identity(p, p);
    a.offset = Vec::Zero(p);
    return a;
}

AffineMap AffineMap::then_inner(const Similarity& s, int p) const {
    AffineMap out;
    out.scale = scale * s.ratio;
    LinearPart srot = LinearPart::Identity(p, p);
    if (p == 2 && s.angle != 0.0) {
        const double c = std::cos(s.angle), sn = std::sin(s.angle);
        srot(0, 0) = c;
        srot(0, 1) = -sn;
        srot(1, 0) = sn;
        srot(1, 1) = c;
    }
    out.rot = rot * srot;
    out.offset = scale * (rot * s.offset) + offset;
    return out;
}

Vec AffineMap::apply(const Vec& x) const { return scale * (rot * x) + offset; }

Vec AffineMap::apply_inverse(const Vec& x) const {
    return (rot.transpose() * (x - offset)) / scale;
}

GridSet ifs_rasterize(const IFS& ifs, int depth, int N) {
    ifs.validate();
    if (depth < 1) fail("invalid-argument", "depth must be >= 1");
    GridSet out(ifs.p, N);
    RasterContext ctx;
    ctx.ifs = &ifs;
    ctx.out = &out;
    ctx.N = N;
    ctx.exact = dyadic_system(ifs);
    recurse(ctx, AffineMap::identity(ifs.p), depth);
    return out;
}

namespace {

IFS triangle(double leg) {
    IFS ifs;
    ifs.p = 2;
    for (auto [ox, oy] : {std::pair{0.0, 0.0}, {leg / 2.0, 0.0}, {0.0, leg / 2.0}}) {
        Similarity s;
        s.ratio = 0.5;
        s.offset = Vec(2);
        s.offset << ox, oy;
        ifs.maps.push_back(s);
    }
    return ifs;
}

}  // namespace

IFS sierpinski_right_unit() { return triangle(1.0); }

IFS sierpinski_preset() { return triangle(0.5); }

IFS square_preset() {
    IFS ifs;
    ifs.p = 2;
    for (auto [ox, oy] : {std::pair{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5}}) {
        Similarity s;
        s.ratio = 0.5;
        s.offset = Vec(2);
        s.offset << ox, oy;
        ifs.maps.push_back(s);
    }
    return ifs;
}

IFS parse_ifs_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("io-error", "cannot open ifs config: " + path);
    IFS ifs;
    ifs.p = 2;
    bool p_fixed = false;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line.substr(start));
        std::string head;
        ls >> head;
        if (head == "p") {
            if (p_fixed || !ifs.maps.empty())
                fail("invalid-ifs", "dimension line must come first");
            if (!(ls >> ifs.p)) fail("invalid-ifs", "malformed dimension line");
            p_fixed = true;
            continue;
        }
        Similarity s;
        try {
            s.ratio = std::stod(head);
        } catch (const std::exception&) {
            fail("invalid-ifs", "malformed ratio in ifs config: " + line);
        }
        std::vector<double> rest;
        double v;
        while (ls >> v) rest.push_back(v);
        if (rest.size() != static_cast<std::size_t>(ifs.p) &&
            !(ifs.p == 2 && rest.size() == 3))
            fail("invalid-ifs", "expected " + std::to_string(ifs.p) +
                                    " offsets (+ optional angle for p=2): " + line);
        s.offset = Vec(ifs.p);
        for (int i = 0; i < ifs.p; ++i) s.offset[i] = rest[static_cast<std::size_t>(i)];
        if (rest.size() == static_cast<std::size_t>(ifs.p) + 1) s.angle = rest.back();
        ifs.maps.push_back(s);
    }
    ifs.validate();
    return ifs;
}

}  // namespace hll
