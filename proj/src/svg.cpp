#include "hll/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hll/io.hpp"

namespace hll {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 56;

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

struct Frame {
    double x0, x1, y0, y1;

    double px(double x) const {
        return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    }
};

void header(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const std::string& xlabel, const std::string& ylabel) {
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" << xlabel
        << "</text>\n"
        << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace

std::string render_plot(const DimEstimate& est) {
    if (est.scales.empty()) fail("invalid-argument", "empty estimate");
    std::ostringstream out;
    header(out);

    double ymin = 0.0, ymax = 1.0;
    std::vector<double> logc(est.counts.size());
    for (std::size_t i = 0; i < est.counts.size(); ++i)
        logc[i] = est.counts[i] > 0 ? std::log2(static_cast<double>(est.counts[i])) : 0.0;
    ymin = *std::min_element(logc.begin(), logc.end());
    ymax = *std::max_element(logc.begin(), logc.end());
    if (ymax == ymin) ymax = ymin + 1.0;

    Frame fr{static_cast<double>(est.scales.front()), static_cast<double>(est.scales.back()),
             ymin, ymax};
    if (fr.x1 == fr.x0) fr.x1 = fr.x0 + 1.0;
    axes(out, "N", "log2 a_N");

    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < logc.size(); ++i) {
        xbar += est.scales[i];
        ybar += logc[i];
    }
    xbar /= static_cast<double>(logc.size());
    ybar /= static_cast<double>(logc.size());
    const double icept = ybar - est.slope * xbar;
    out << "<line x1=\"" << fmt(fr.px(fr.x0)) << "\" y1=\""
        << fmt(fr.py(est.slope * fr.x0 + icept)) << "\" x2=\"" << fmt(fr.px(fr.x1))
        << "\" y2=\"" << fmt(fr.py(est.slope * fr.x1 + icept))
        << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";

    for (std::size_t i = 0; i < logc.size(); ++i)
        out << "<circle cx=\"" << fmt(fr.px(est.scales[i])) << "\" cy=\"" << fmt(fr.py(logc[i]))
            << "\" r=\"3.5\" fill=\"#2c3e50\"/>\n";

    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 12
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"14\">slope="
        << fmt(est.slope, "%.4f") << " residual=" << fmt(est.residual, "%.4f") << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string render_plot(const LevelProfile& profile) {
    if (profile.levels.empty() || profile.resolved_count() == 0)
        fail("invalid-argument", "empty profile");
    std::ostringstream out;
    header(out);

    double smax = 0.0;
    for (std::size_t l = 0; l < profile.levels.size(); ++l)
        if (profile.resolved[l]) smax = std::max(smax, profile.dims[l].slope);
    smax = std::max(smax, 1.0);

    Frame fr{profile.levels.front(), profile.levels.back(), 0.0, smax * 1.05};
    if (fr.x1 == fr.x0) fr.x1 = fr.x0 + 1.0;
    axes(out, "r", "slope");

    // step plot; empty levels break the path
    bool open = false;
    std::ostringstream path;
    for (std::size_t l = 0; l < profile.levels.size(); ++l) {
        if (!profile.resolved[l]) {
            open = false;
            continue;
        }
        const double x = fr.px(profile.levels[l]);
        const double y = fr.py(profile.dims[l].slope);
        if (!open) {
            path << "M" << fmt(x) << ' ' << fmt(y);
            open = true;
        } else {
            path << " H" << fmt(x) << " V" << fmt(y);
        }
    }
    out << "<path d=\"" << path.str()
        << "\" fill=\"none\" stroke=\"#2980b9\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin - 12
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"14\">levels="
        << profile.levels.size() << " nonempty=" << profile.nonempty_count() << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

void emit_plot(const DimEstimate& est, const std::string& path) {
    write_text(path, render_plot(est));
}

void emit_plot(const LevelProfile& profile, const std::string& path) {
    write_text(path, render_plot(profile));
}

}  // namespace hll
