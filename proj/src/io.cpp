#include "hll/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace hll {

namespace {

constexpr char kGridMagic[8] = {'H', 'L', 'G', 'R', 'I', 'D', '0', '1'};
constexpr char kFunMagic[8] = {'H', 'L', 'F', 'U', 'N', '0', '0', '1'};

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

double get_f64(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("io-error", "cannot write " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("io-error", "cannot read " + path);
    return in;
}

}  // namespace

void write_grid(const GridSet& g, const std::string& path) {
    std::ofstream out = open_out(path);
    out.write(kGridMagic, 8);
    out.put(static_cast<char>(g.dim()));
    out.put(static_cast<char>(g.level()));
    for (int i = 0; i < g.dim(); ++i) {
        put_f64(out, g.bounds_lo()[i]);
        put_f64(out, g.bounds_hi()[i]);
    }
    const std::uint64_t bytes = (g.total_cells() + 7) / 8;
    std::vector<char> buf(bytes, 0);
    for (std::uint64_t bit = 0; bit < g.total_cells(); ++bit)
        if (g.test(bit)) buf[bit >> 3] |= static_cast<char>(1 << (bit & 7));
    out.write(buf.data(), static_cast<std::streamsize>(bytes));
    if (!out) fail("io-error", "short write: " + path);
}

GridSet read_grid(const std::string& path) {
    std::ifstream in = open_in(path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kGridMagic, 8) != 0)
        fail("io-error", "not a HLGRID01 file: " + path);
    const int p = in.get();
    const int N = in.get();
    std::array<double, kMaxDim> lo{}, hi{};
    for (int i = 0; i < p; ++i) {
        lo[i] = get_f64(in);
        hi[i] = get_f64(in);
    }
    GridSet g(p, N, lo, hi);
    const std::uint64_t bytes = (g.total_cells() + 7) / 8;
    std::vector<char> buf(bytes);
    in.read(buf.data(), static_cast<std::streamsize>(bytes));
    if (!in) fail("io-error", "truncated HLGRID01 file: " + path);
    for (std::uint64_t bit = 0; bit < g.total_cells(); ++bit)
        if (buf[bit >> 3] & (1 << (bit & 7))) g.set(bit);
    return g;
}

void write_function(const GridFunction& f, const std::string& path) {
    std::ofstream out = open_out(path);
    out.write(kFunMagic, 8);
    out.put(static_cast<char>(f.dim()));
    out.put(static_cast<char>(f.level()));
    put_f64(out, f.alpha());
    put_f64(out, f.c());
    for (std::uint64_t v = 0; v < f.vertex_count(); ++v) put_f64(out, f[v]);
    if (!out) fail("io-error", "short write: " + path);
}

GridFunction read_function(const std::string& path) {
    std::ifstream in = open_in(path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kFunMagic, 8) != 0)
        fail("io-error", "not a HLFUN001 file: " + path);
    const int p = in.get();
    const int N = in.get();
    const double alpha = get_f64(in);
    const double c = get_f64(in);
    GridFunction f(p, N, alpha, c);
    for (std::uint64_t v = 0; v < f.vertex_count(); ++v) f[v] = get_f64(in);
    if (!in) fail("io-error", "truncated HLFUN001 file: " + path);
    return f;
}

Json to_json(const DimEstimate& est) {
    Json j;
    j["scales"] = est.scales;
    j["counts"] = est.counts;
    j["slope"] = est.slope;
    j["residual"] = est.residual;
    return j;
}

Json to_json(const SimplicialInterpolant& interp) {
    Json j;
    j["p"] = interp.dim();
    j["delta"] = interp.delta();
    Json simplices = Json::array();
    for (const SimplexRecord& rec : interp.simplices()) {
        Json s;
        Json verts = Json::array();
        for (Eigen::Index col = 0; col < rec.vertices.cols(); ++col) {
            Json v = Json::array();
            for (Eigen::Index row = 0; row < rec.vertices.rows(); ++row)
                v.push_back(rec.vertices(row, col));
            verts.push_back(v);
        }
        s["vertices"] = verts;
        Json vals = Json::array();
        for (Eigen::Index i = 0; i < rec.values.size(); ++i) vals.push_back(rec.values[i]);
        s["values"] = vals;
        s["a"] = rec.a;
        s["b"] = rec.b;
        simplices.push_back(s);
    }
    j["simplices"] = simplices;
    return j;
}

std::string profile_csv_string(const LevelProfile& profile) {
    std::ostringstream out;
    out << "r";
    for (int s : profile.scales) out << ",a_" << s;
    out << ",slope,residual,empty\n";
    char buf[64];
    for (std::size_t l = 0; l < profile.levels.size(); ++l) {
        std::snprintf(buf, sizeof buf, "%.12g", profile.levels[l]);
        out << buf;
        for (std::size_t si = 0; si < profile.scales.size(); ++si)
            out << ',' << profile.counts[l][si];
        if (!profile.resolved[l]) {
            out << ",,," << (profile.empty[l] ? 1 : 0) << '\n';
        } else {
            std::snprintf(buf, sizeof buf, ",%.12g,%.12g,0", profile.dims[l].slope,
                          profile.dims[l].residual);
            out << buf << '\n';
        }
    }
    return out.str();
}

void write_profile_csv(const LevelProfile& profile, const std::string& path) {
    write_text(path, profile_csv_string(profile));
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail("io-error", "short write: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hll
