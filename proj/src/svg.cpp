#include "bohmflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bohmflow {

namespace {

std::string rgb(double r, double g, double b) {
    char buf[16];
    auto ch = [](double v) {
        return static_cast<int>(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
    };
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", ch(r), ch(g), ch(b));
    return buf;
}

/// Dark-blue -> teal -> yellow ramp for magnitudes.
std::string ramp(double f) {
    f = std::clamp(f, 0.0, 1.0);
    return rgb(0.1 + 0.85 * f * f, 0.05 + 0.9 * f, 0.35 + 0.3 * f - 0.5 * f * f);
}

/// Blue/white/red ramp for signed fields.
std::string diverging(double f) {
    f = std::clamp(f, -1.0, 1.0);
    if (f < 0.0) return rgb(1.0 + f, 1.0 + f, 1.0);
    return rgb(1.0, 1.0 - f, 1.0 - f);
}

} // namespace

SvgFigure::SvgFigure(double x_lo, double x_hi, double y_lo, double y_hi,
                     int width_px, int height_px, const std::string& title)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), w_(width_px),
      h_(height_px) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                  "height=\"%d\" viewBox=\"0 0 %d %d\">\n"
                  "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n",
                  w_, h_, w_, h_, w_, h_);
    body_ = buf;
    if (!title.empty()) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"18\" font-family=\"sans-serif\" "
                      "font-size=\"14\">%s</text>\n",
                      kMargin, title.c_str());
        body_ += buf;
    }
}

double SvgFigure::px(double x) const {
    return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (w_ - 2 * kMargin);
}

double SvgFigure::py(double y) const {
    return h_ - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * (h_ - 2 * kMargin);
}

void SvgFigure::heatmap(const std::vector<double>& values, int nx, int ny,
                        bool signed_scale) {
    double vmax = 0.0;
    for (double v : values)
        if (std::isfinite(v)) vmax = std::max(vmax, std::abs(v));
    if (vmax <= 0.0) vmax = 1.0;
    const double cw = (px(x_hi_) - px(x_lo_)) / nx;
    const double chh = (py(y_lo_) - py(y_hi_)) / ny;
    char buf[200];
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const double v = values[static_cast<std::size_t>(iy) *
                                        static_cast<std::size_t>(nx) +
                                    static_cast<std::size_t>(ix)];
            if (!std::isfinite(v)) continue;
            const std::string color =
                signed_scale ? diverging(v / vmax) : ramp(std::abs(v) / vmax);
            const double x0 = px(x_lo_) + ix * cw;
            const double y0 = py(y_hi_) + iy * chh;
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" "
                          "height=\"%.2f\" fill=\"%s\"/>\n",
                          x0, y0, cw + 0.5, chh + 0.5, color.c_str());
            body_ += buf;
        }
    }
}

void SvgFigure::polyline(const std::vector<Vec2>& pts, const std::string& color,
                         double width) {
    if (pts.size() < 2) return;
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
             std::to_string(width) + "\" points=\"";
    char buf[48];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(p.x), py(p.z));
        body_ += buf;
    }
    body_ += "\"/>\n";
}

void SvgFigure::line(Vec2 a, Vec2 b, const std::string& color, double width) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                  "stroke=\"%s\" stroke-width=\"%.2f\"/>\n",
                  px(a.x), py(a.z), px(b.x), py(b.z), color.c_str(), width);
    body_ += buf;
}

void SvgFigure::axes(const std::string& x_label, const std::string& y_label) {
    line({x_lo_, y_lo_}, {x_hi_, y_lo_}, "black", 1.0);
    line({x_lo_, y_lo_}, {x_lo_, y_hi_}, "black", 1.0);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"12\">%s</text>\n",
                  0.5 * (px(x_lo_) + px(x_hi_)), h_ - 10.0, x_label.c_str());
    body_ += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"12\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"12\" transform=\"rotate(-90 12 %.1f)\">%s</text>\n",
                  0.5 * (py(y_lo_) + py(y_hi_)), 0.5 * (py(y_lo_) + py(y_hi_)),
                  y_label.c_str());
    body_ += buf;
    // annotate extents
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%g</text>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%g</text>\n",
                  px(x_lo_), h_ - kMargin + 14.0, x_lo_, px(x_hi_) - 20.0,
                  h_ - kMargin + 14.0, x_hi_);
    body_ += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%g</text>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"10\">%g</text>\n",
                  kMargin - 36.0, py(y_lo_), y_lo_, kMargin - 36.0,
                  py(y_hi_) + 8.0, y_hi_);
    body_ += buf;
}

std::string SvgFigure::finish() { return body_ + "</svg>\n"; }

} // namespace bohmflow
