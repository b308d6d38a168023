#pragma once

#include <string>
#include <vector>

#include "bohmflow/types.hpp"

namespace bohmflow {

/// Small native SVG emitter for diagnostic figures: heatmaps over a
/// regular grid, polyline trajectory plots and streamline sketches.
/// No external plotting dependency; output is deliberately plain.
class SvgFigure {
  public:
    SvgFigure(double x_lo, double x_hi, double y_lo, double y_hi,
              int width_px = 860, int height_px = 600,
              const std::string& title = "");

    /// Row-major values[iy * nx + ix]; NaN cells are left blank.
    void heatmap(const std::vector<double>& values, int nx, int ny,
                 bool signed_scale = false);

    void polyline(const std::vector<Vec2>& pts, const std::string& color,
                  double width = 1.0);
    void line(Vec2 a, Vec2 b, const std::string& color, double width = 1.0);

    void axes(const std::string& x_label, const std::string& y_label);

    std::string finish();

  private:
    double px(double x) const;
    double py(double y) const;

    double x_lo_, x_hi_, y_lo_, y_hi_;
    int w_, h_;
    static constexpr int kMargin = 46;
    std::string body_;
};

} // namespace bohmflow
